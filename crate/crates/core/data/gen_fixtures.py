#!/usr/bin/env python3
"""Regenerate the bundled fixture structures.

The protein entries used by the demo scenes (ubiquitin 1d3z, the UIM helix,
the 1QOP alpha/beta pair) cannot be redistributed alongside this crate, so
the fixtures are synthetic stand-ins with the right sequences and residue
counts, built from idealized internal coordinates (NeRF placement). The small
molecule fragments reuse the published lysine/glutamate display coordinates
(scaled back to angstrom) and fill in the hidden hydrogens geometrically.

Usage: python3 gen_fixtures.py   (writes into ./fixtures next to this file)
"""
import math
import os
import random

import numpy as np

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

# ---------------------------------------------------------------- geometry


def place(a, b, c, bond, angle_deg, torsion_deg):
    """NeRF: position of d given a-b-c, |cd|=bond, angle bcd, torsion abcd."""
    angle = math.radians(angle_deg)
    torsion = math.radians(torsion_deg)
    bc = c - b
    bc /= np.linalg.norm(bc)
    n = np.cross(b - a, bc)
    n /= np.linalg.norm(n)
    m = np.cross(n, bc)
    d2 = np.array(
        [
            -bond * math.cos(angle),
            bond * math.sin(angle) * math.cos(torsion),
            bond * math.sin(angle) * math.sin(torsion),
        ]
    )
    return c + d2[0] * bc + d2[1] * m + d2[2] * n


# (name, a, b, c, bond, angle, torsion); c is the bonded parent.
SIDE_CHAINS = {
    "GLY": [],
    "ALA": [],
    "SER": [("OG", "N", "CA", "CB", 1.42, 111.0, 60.0)],
    "CYS": [("SG", "N", "CA", "CB", 1.81, 114.0, 60.0)],
    "VAL": [
        ("CG1", "N", "CA", "CB", 1.53, 110.5, 180.0),
        ("CG2", "N", "CA", "CB", 1.53, 110.5, 60.0),
    ],
    "THR": [
        ("OG1", "N", "CA", "CB", 1.43, 109.0, 60.0),
        ("CG2", "N", "CA", "CB", 1.53, 111.0, -60.0),
    ],
    "LEU": [
        ("CG", "N", "CA", "CB", 1.53, 116.0, -60.0),
        ("CD1", "CA", "CB", "CG", 1.52, 110.5, 180.0),
        ("CD2", "CA", "CB", "CG", 1.52, 110.5, 60.0),
    ],
    "ILE": [
        ("CG1", "N", "CA", "CB", 1.53, 110.0, -60.0),
        ("CG2", "N", "CA", "CB", 1.53, 110.5, 180.0),
        ("CD1", "CA", "CB", "CG1", 1.52, 114.0, 180.0),
    ],
    "MET": [
        ("CG", "N", "CA", "CB", 1.52, 114.0, -60.0),
        ("SD", "CA", "CB", "CG", 1.81, 112.7, 180.0),
        ("CE", "CB", "CG", "SD", 1.79, 100.5, 70.0),
    ],
    "PRO": [
        ("CG", "N", "CA", "CB", 1.50, 104.5, 30.0),
        ("CD", "CA", "CB", "CG", 1.51, 105.5, -35.0),
    ],
    "PHE": [
        ("CG", "N", "CA", "CB", 1.50, 114.0, -60.0),
        ("CD1", "CA", "CB", "CG", 1.39, 120.7, 90.0),
        ("CD2", "CA", "CB", "CG", 1.39, 120.7, -90.0),
        ("CE1", "CB", "CG", "CD1", 1.39, 120.0, 180.0),
        ("CE2", "CB", "CG", "CD2", 1.39, 120.0, 180.0),
        ("CZ", "CG", "CD1", "CE1", 1.39, 120.0, 0.0),
    ],
    "TYR": [
        ("CG", "N", "CA", "CB", 1.51, 114.0, -60.0),
        ("CD1", "CA", "CB", "CG", 1.39, 120.8, 90.0),
        ("CD2", "CA", "CB", "CG", 1.39, 120.8, -90.0),
        ("CE1", "CB", "CG", "CD1", 1.39, 121.2, 180.0),
        ("CE2", "CB", "CG", "CD2", 1.39, 121.2, 180.0),
        ("CZ", "CG", "CD1", "CE1", 1.39, 119.6, 0.0),
        ("OH", "CD1", "CE1", "CZ", 1.36, 119.9, 180.0),
    ],
    "TRP": [
        ("CG", "N", "CA", "CB", 1.50, 114.0, -60.0),
        ("CD1", "CA", "CB", "CG", 1.37, 127.0, 90.0),
        ("CD2", "CA", "CB", "CG", 1.43, 126.6, -90.0),
        ("NE1", "CB", "CG", "CD1", 1.38, 110.2, 180.0),
        ("CE2", "CB", "CG", "CD2", 1.40, 107.2, 180.0),
        ("CE3", "CB", "CG", "CD2", 1.40, 133.9, 0.0),
        ("CZ2", "CG", "CD2", "CE2", 1.40, 122.4, 180.0),
        ("CZ3", "CG", "CD2", "CE3", 1.39, 118.7, 180.0),
        ("CH2", "CD2", "CE2", "CZ2", 1.37, 117.5, 0.0),
    ],
    "HIS": [
        ("CG", "N", "CA", "CB", 1.50, 113.7, -60.0),
        ("ND1", "CA", "CB", "CG", 1.38, 122.7, 90.0),
        ("CD2", "CA", "CB", "CG", 1.36, 131.0, -90.0),
        ("CE1", "CB", "CG", "ND1", 1.32, 109.0, 180.0),
        ("NE2", "CB", "CG", "CD2", 1.37, 107.0, 180.0),
    ],
    "ASP": [
        ("CG", "N", "CA", "CB", 1.52, 113.0, -60.0),
        ("OD1", "CA", "CB", "CG", 1.25, 119.2, -30.0),
        ("OD2", "CA", "CB", "CG", 1.25, 118.2, 150.0),
    ],
    "ASN": [
        ("CG", "N", "CA", "CB", 1.52, 112.6, -60.0),
        ("OD1", "CA", "CB", "CG", 1.23, 120.8, -30.0),
        ("ND2", "CA", "CB", "CG", 1.33, 116.4, 150.0),
    ],
    "GLU": [
        ("CG", "N", "CA", "CB", 1.52, 114.0, -60.0),
        ("CD", "CA", "CB", "CG", 1.52, 113.0, 180.0),
        ("OE1", "CB", "CG", "CD", 1.25, 119.0, -30.0),
        ("OE2", "CB", "CG", "CD", 1.25, 118.1, 150.0),
    ],
    "GLN": [
        ("CG", "N", "CA", "CB", 1.52, 114.0, -60.0),
        ("CD", "CA", "CB", "CG", 1.52, 112.6, 180.0),
        ("OE1", "CB", "CG", "CD", 1.23, 120.9, -30.0),
        ("NE2", "CB", "CG", "CD", 1.33, 116.5, 150.0),
    ],
    "LYS": [
        ("CG", "N", "CA", "CB", 1.52, 114.0, -60.0),
        ("CD", "CA", "CB", "CG", 1.52, 111.3, 180.0),
        ("CE", "CB", "CG", "CD", 1.52, 111.3, 180.0),
        ("NZ", "CG", "CD", "CE", 1.49, 111.9, 180.0),
    ],
    "ARG": [
        ("CG", "N", "CA", "CB", 1.52, 114.0, -60.0),
        ("CD", "CA", "CB", "CG", 1.52, 111.3, 180.0),
        ("NE", "CB", "CG", "CD", 1.46, 112.0, 180.0),
        ("CZ", "CG", "CD", "NE", 1.33, 124.2, 180.0),
        ("NH1", "CD", "NE", "CZ", 1.33, 120.0, 0.0),
        ("NH2", "CD", "NE", "CZ", 1.33, 119.6, 180.0),
    ],
}

ONE_TO_THREE = {
    "A": "ALA", "R": "ARG", "N": "ASN", "D": "ASP", "C": "CYS",
    "Q": "GLN", "E": "GLU", "G": "GLY", "H": "HIS", "I": "ILE",
    "L": "LEU", "K": "LYS", "M": "MET", "F": "PHE", "P": "PRO",
    "S": "SER", "T": "THR", "W": "TRP", "Y": "TYR", "V": "VAL",
}

PHI_PSI = {
    "H": (-57.0, -47.0),
    "G": (-49.0, -26.0),
    "E": (-120.0, 130.0),
}
LOOP_CHOICES = [
    (-70.0, 140.0), (-90.0, 0.0), (-65.0, -40.0), (-140.0, 160.0),
    (60.0, 40.0), (-80.0, 80.0), (-60.0, 120.0), (-100.0, -20.0),
]


def build_chain(seq, ss, rng, start_seq=1):
    """Returns list of (resname, resseq, [(atom, xyz)])."""
    residues = []
    n = np.array([0.0, 0.0, 0.0])
    ca = np.array([1.458, 0.0, 0.0])
    c = place(np.array([0.0, 1.0, 0.0]), n, ca, 1.525, 111.2, -60.0)
    for i, aa in enumerate(seq):
        name = ONE_TO_THREE[aa]
        kind = ss[i]
        if kind in PHI_PSI:
            phi, psi = PHI_PSI[kind]
        elif aa == "G":
            phi, psi = (80.0, 10.0)
        else:
            phi, psi = rng.choice(LOOP_CHOICES)
        if i > 0:
            n = place(prev_n, prev_ca, prev_c, 1.329, 116.2, prev_psi)
            ca = place(prev_ca, prev_c, n, 1.458, 121.7, 180.0)
            c = place(prev_c, n, ca, 1.525, 111.2, phi)
        atoms = {"N": n, "CA": ca, "C": c}
        # carbonyl O is placed once psi is known (anti to next N)
        atoms["O"] = place(n, ca, c, 1.231, 120.5, psi + 180.0)
        order = ["N", "CA", "C", "O"]
        if name != "GLY":
            atoms["CB"] = place(c, n, ca, 1.53, 110.5, -122.6)
            order.append("CB")
            for (an, a, b, cc, bond, ang, tor) in SIDE_CHAINS[name]:
                atoms[an] = place(atoms[a], atoms[b], atoms[cc], bond, ang, tor)
                order.append(an)
        residues.append((name, start_seq + i, [(a, atoms[a]) for a in order]))
        prev_n, prev_ca, prev_c, prev_psi = n, ca, c, psi
    return residues


def centered(residues):
    xyz = np.array([p for _, _, atoms in residues for _, p in atoms])
    cen = xyz.mean(axis=0)
    return [(r, s, [(a, p - cen) for a, p in atoms]) for r, s, atoms in residues]


def transform(residues, rot, trans):
    return [(r, s, [(a, rot @ p + trans) for a, p in atoms]) for r, s, atoms in residues]


def element_of(atom_name):
    if atom_name.startswith("FE"):
        return "FE"
    if atom_name.startswith("CL"):
        return "CL"
    return atom_name[0]


def pdb_line(record, serial, name, resname, chain, resseq, xyz, element):
    padded = name if len(name) >= 4 or len(element) == 2 else " " + name
    return "%-6s%5d %-4s %3s %1s%4d    %8.3f%8.3f%8.3f%6.2f%6.2f          %2s" % (
        record, serial, padded[:4], resname, chain, resseq,
        xyz[0], xyz[1], xyz[2], 1.0, 0.0, element.rjust(2),
    )


def write_pdb(path, residues, chain, record="ATOM", header=None):
    lines = []
    if header:
        lines.extend("REMARK   1 " + h for h in header)
    serial = 1
    for resname, resseq, atoms in residues:
        for name, xyz in atoms:
            lines.append(pdb_line(record, serial, name, resname, chain, resseq, xyz, element_of(name)))
            serial += 1
    lines.append("TER")
    lines.append("END")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def ca_coords(residues):
    return np.array([dict(atoms)["CA"] for _, _, atoms in residues])


def rotation_between(u, v):
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    axis = np.cross(u, v)
    s = np.linalg.norm(axis)
    c = float(np.dot(u, v))
    if s < 1e-12:
        return np.eye(3) if c > 0 else -np.eye(3)
    k = axis / s
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + s * kx + (1 - c) * kx @ kx


def quat_from_matrix(m):
    tr = np.trace(m)
    w = math.sqrt(max(0.0, 1.0 + tr)) / 2.0
    x = math.copysign(math.sqrt(max(0.0, 1 + m[0, 0] - m[1, 1] - m[2, 2])) / 2.0, m[2, 1] - m[1, 2])
    y = math.copysign(math.sqrt(max(0.0, 1 - m[0, 0] + m[1, 1] - m[2, 2])) / 2.0, m[0, 2] - m[2, 0])
    z = math.copysign(math.sqrt(max(0.0, 1 - m[0, 0] - m[1, 1] + m[2, 2])) / 2.0, m[1, 0] - m[0, 1])
    q = np.array([w, x, y, z])
    return q / np.linalg.norm(q)


def compact_chain(seq, ss, rng, trials, min_nonlocal=4.2):
    """Most compact of `trials` seeded loop samplings without nonlocal CA clashes."""
    best, best_rg = None, float("inf")
    for _ in range(trials):
        chain = build_chain(seq, ss, rng)
        ca = ca_coords(chain)
        d = np.linalg.norm(ca[:, None, :] - ca[None, :, :], axis=2)
        n = len(ca)
        mask = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :]) >= 3
        if d[mask].min() < min_nonlocal:
            continue
        rg = math.sqrt(((ca - ca.mean(axis=0)) ** 2).sum(axis=1).mean())
        if rg < best_rg:
            best, best_rg = chain, rg
    return best


def dock_alongside(target, mobile, patch_seq, min_sep, parallel_to=None):
    """Place `mobile` (centered) next to `target` around residue `patch_seq`.

    The mobile helix axis is laid perpendicular to the patch direction and
    pushed outward until no CA-CA pair is closer than `min_sep`.
    Returns (rotation, translation) applied to the mobile coordinates.
    """
    ca_t = {s: dict(a)["CA"] for _, s, a in target}
    u = ca_t[patch_seq] / np.linalg.norm(ca_t[patch_seq])
    ca_m = ca_coords(mobile)
    axis = ca_m[-1] - ca_m[0]
    perp = np.cross(u, [0.0, 0.0, 1.0])
    if np.linalg.norm(perp) < 1e-6:
        perp = np.cross(u, [0.0, 1.0, 0.0])
    if parallel_to is not None:
        ref = ca_t[parallel_to[1]] - ca_t[parallel_to[0]]
        perp = ref - np.dot(ref, u) * u
    rot = rotation_between(axis, perp)
    tgt = ca_coords(target)
    dist = np.linalg.norm(ca_t[patch_seq])
    while True:
        trans = u * dist
        moved = (rot @ ca_m.T).T + trans
        dmin = np.min(np.linalg.norm(tgt[:, None, :] - moved[None, :, :], axis=2))
        if dmin >= min_sep:
            return rot, trans
        dist += 0.25


# ---------------------------------------------------------------- fixtures

UBIQUITIN = "MQIFVKTLTGKTITLEVEPSDTIENVKAKIQDKEGIPPDQQRLIFAGKQLEDGRTLSDYNIQKESTLHLVLRLRGG"
UBQ_SS = (
    "EEEEEEE" "LL" "EEEEEEEE" "LLLLL" "HHHHHHHHHHHH" "LLLLL" "EEEEEE" "LL"
    "EE" "LLLLLL" "GGGG" "LLLLLL" "EEEEEEE" "LLLL"
)
UIM = "PEEEELIRKAIELSLKESRN"
ALPHA_1QOP = "MERYENLFAQLNDRREGAFVPFVTLGDPGIEQSLKIIDTLIDAGADALELGVPFSDPLADGPTIQNANLRAFAAG"[:40]
BETA_1QOP = "TTLLNPYFGEFGGMYVPQILMPALNQLEEAFVSAQKDPEF"[:30]


def lys_glu():
    # Display coordinates (angstrom / 2) of the visible atoms; CA anchored at the marker origin.
    lys_disp = {
        "CA": (0.000, 0.000, 0.000),
        "CB": (-0.6035, -0.3175, -0.347),
        "CG": (-1.2480, -0.037, -0.0455),
        "CD": (-1.851, -0.3545, -0.3925),
        "CE": (-2.496, -0.0745, -0.0905),
        "NZ": (-3.075, -0.3795, -0.4235),
        "HB2": (-0.5875, -0.2035, -0.88),
    }
    glu_disp = {
        "CA": (0.000, 0.000, 0.000),
        "CB": (-0.6365, -0.3515, -0.238),
        "CG": (-1.2485, 0.0445, -0.006),
        "CD": (-1.8755, -0.3015, -0.2405),
        "OE1": (-1.836, -0.8175, -0.563),
    }
    lys = {k: 2.0 * np.array(v) for k, v in lys_disp.items()}
    glu = {k: 2.0 * np.array(v) for k, v in glu_disp.items()}

    # second carboxylate O: trigonal, in the CG-CD-OE1 plane
    glu["OE2"] = place(glu["OE1"], glu["CG"], glu["CD"], 1.25, 118.0, 180.0)

    def methylene(prev, center, nxt, given=None):
        bis = (center - prev) / np.linalg.norm(center - prev) + (center - nxt) / np.linalg.norm(center - nxt)
        bis /= np.linalg.norm(bis)
        perp = np.cross(center - prev, center - nxt)
        perp /= np.linalg.norm(perp)
        a = math.radians(54.75)
        h1 = center + 1.09 * (math.cos(a) * bis + math.sin(a) * perp)
        h2 = center + 1.09 * (math.cos(a) * bis - math.sin(a) * perp)
        if given is not None:
            # keep the published hydrogen, mirror the other through the C-C-C plane
            h1 = given
            h2 = center + 1.09 * (math.cos(a) * bis - math.sin(a) * perp)
            if np.linalg.norm(h2 - h1) < 0.5:
                h2 = center + 1.09 * (math.cos(a) * bis + math.sin(a) * perp)
        return h1, h2

    lys_atoms = [(n, lys[n]) for n in ["CA", "CB", "CG", "CD", "CE", "NZ"]]
    hb2, hb3 = methylene(lys["CA"], lys["CB"], lys["CG"], given=lys["HB2"])
    lys_atoms += [("HB2", hb2), ("HB3", hb3)]
    for prev, cen, nxt, tag in [("CB", "CG", "CD", "G"), ("CG", "CD", "CE", "D"), ("CD", "CE", "NZ", "E")]:
        h1, h2 = methylene(lys[prev], lys[cen], lys[nxt])
        lys_atoms += [("H%s2" % tag, h1), ("H%s3" % tag, h2)]
    for i, tor in enumerate([180.0, 60.0, -60.0]):
        lys_atoms.append(("HZ%d" % (i + 1), place(lys["CD"], lys["CE"], lys["NZ"], 1.01, 109.5, tor)))

    glu_atoms = [(n, glu[n]) for n in ["CA", "CB", "CG", "CD", "OE1", "OE2"]]
    for prev, cen, nxt, tag in [("CA", "CB", "CG", "B"), ("CB", "CG", "CD", "G")]:
        h1, h2 = methylene(glu[prev], glu[cen], glu[nxt])
        glu_atoms += [("H%s2" % tag, h1), ("H%s3" % tag, h2)]

    write_pdb(os.path.join(OUT, "lys_sidechain.pdb"), [("LYS", 1, lys_atoms)], "A",
              header=["lysine side chain, CA at origin, angstrom units (display x2)"])
    write_pdb(os.path.join(OUT, "glu_sidechain.pdb"), [("GLU", 1, glu_atoms)], "B",
              header=["glutamate side chain, CA at origin, angstrom units (display x2)"])


def diels_alder():
    # 1,3-cyclohexadiene: C1=C2-C3=C4 diene, C5/C6 sp3 puckered out of plane
    ring = []
    for k in range(6):
        ang = math.radians(60.0 * k)
        z = 0.0 if k < 4 else (0.25 if k == 4 else -0.25)
        ring.append(np.array([1.40 * math.cos(ang), 1.40 * math.sin(ang), z]))
    atoms = [("C%d" % (k + 1), ring[k]) for k in range(6)]
    for k in range(4):
        radial = ring[k] / np.linalg.norm(ring[k])
        atoms.append(("H%d" % (k + 1), ring[k] + 1.08 * radial))
    for k, tag in [(4, "5"), (5, "6")]:
        radial = ring[k] / np.linalg.norm(ring[k])
        up = np.array([0.0, 0.0, 1.0])
        atoms.append(("H%sA" % tag, ring[k] + 1.09 * (0.58 * radial + 0.81 * up)))
        atoms.append(("H%sB" % tag, ring[k] + 1.09 * (0.58 * radial - 0.81 * up)))
    write_pdb(os.path.join(OUT, "cyclohexadiene.pdb"), [("CHD", 1, atoms)], "A", record="HETATM",
              header=["1,3-cyclohexadiene, idealized geometry"])

    # vinyl chloride CH2=CHCl, C=C along x
    c1 = np.array([0.665, 0.0, 0.0])
    c2 = np.array([-0.665, 0.0, 0.0])
    vc = [
        ("C1", c1),
        ("C2", c2),
        ("CL1", c1 + 1.73 * np.array([math.cos(math.radians(57.0)), math.sin(math.radians(57.0)), 0.0])),
        ("H1", c1 + 1.08 * np.array([math.cos(math.radians(-60.0)), math.sin(math.radians(-60.0)), 0.0])),
        ("H2", c2 + 1.08 * np.array([-math.cos(math.radians(60.0)), math.sin(math.radians(60.0)), 0.0])),
        ("H3", c2 + 1.08 * np.array([-math.cos(math.radians(60.0)), -math.sin(math.radians(60.0)), 0.0])),
    ]
    write_pdb(os.path.join(OUT, "vinyl_chloride.pdb"), [("VCL", 1, vc)], "B", record="HETATM",
              header=["vinyl chloride, idealized geometry"])


def heme_and_probe():
    atoms = [("FE", np.zeros(3))]
    for k in range(4):
        ang = math.radians(90.0 * k)
        atoms.append(("N%s" % "ABCD"[k], 2.0 * np.array([math.cos(ang), math.sin(ang), 0.0])))
    for k in range(4):
        # alpha carbons flanking each pyrrole N, meso carbon between pyrroles
        for j, off in enumerate((-22.0, 22.0)):
            ang = math.radians(90.0 * k + off)
            atoms.append(("C%d%s" % (k + 1, "AB"[j]), 3.05 * np.array([math.cos(ang), math.sin(ang), 0.0])))
        ang = math.radians(90.0 * k + 45.0)
        atoms.append(("CM%s" % "ABCD"[k], 3.42 * np.array([math.cos(ang), math.sin(ang), 0.0])))
    atoms.append(("NE2", np.array([0.0, 0.0, -2.10])))
    write_pdb(os.path.join(OUT, "heme_site.pdb"), [("HEM", 1, atoms)], "A", record="HETATM",
              header=["simplified Fe(III) heme site, Fe at origin, heme plane = xy"])
    write_pdb(os.path.join(OUT, "probe_h.pdb"), [("PRB", 1, [("H1", np.zeros(3))])], "B", record="HETATM",
              header=["single hydrogen probe at origin"])


def proteins():
    rng = random.Random(1234)
    assert len(UBIQUITIN) == 76 and len(UBQ_SS) == 76, (len(UBIQUITIN), len(UBQ_SS))
    ubq = centered(compact_chain(UBIQUITIN, UBQ_SS, rng, 3000))
    write_pdb(os.path.join(OUT, "ubiquitin_1d3z_synthetic.pdb"), ubq, "A",
              header=["synthetic stand-in for PDB 1d3z model 1 (ubiquitin sequence,",
                      "idealized secondary-structure backbone), centered at origin"])
    uim = centered(build_chain(UIM, "H" * len(UIM), rng))
    write_pdb(os.path.join(OUT, "uim_synthetic.pdb"), uim, "B",
              header=["synthetic ubiquitin-interacting motif helix, centered at origin"])

    rot, trans = dock_alongside(ubq, uim, 44, 5.0)
    q = quat_from_matrix(rot)
    ubq_ca = {s: dict(a)["CA"] for _, s, a in ubq}
    uim_docked = transform(uim, rot, trans)
    uim_ca = {s: dict(a)["CA"] for _, s, a in uim_docked}
    anchor_b = min(uim_ca, key=lambda s: np.linalg.norm(uim_ca[s] - ubq_ca[44]))
    with open(os.path.join(OUT, "ubiquitin_uim_docked_pose.txt"), "w") as fh:
        fh.write("# docked pose of the UIM body (angstrom translation, quaternion w x y z)\n")
        fh.write("quat %.9f %.9f %.9f %.9f\n" % tuple(q))
        fh.write("translation %.6f %.6f %.6f\n" % tuple(trans))
        fh.write("anchor_a 44 anchor_b %d distance %.6f\n" % (anchor_b, np.linalg.norm(uim_ca[anchor_b] - ubq_ca[44])))

    # 1QOP-like pair: helix-loop-helix alpha fragment and a helical beta fragment
    ss_a = "H" * 18 + "LLLL" + "H" * 18
    alpha = centered(build_chain(ALPHA_1QOP, ss_a, rng))
    beta = centered(build_chain(BETA_1QOP, "H" * len(BETA_1QOP), rng))
    write_pdb(os.path.join(OUT, "qop_alpha_synthetic.pdb"), alpha, "A",
              header=["synthetic stand-in for 1QOP chain A fragment, centered"])
    write_pdb(os.path.join(OUT, "qop_beta_synthetic.pdb"), beta, "B",
              header=["synthetic stand-in for 1QOP chain B fragment, centered"])
    rot2, trans2 = dock_alongside(alpha, beta, 9, 4.0, parallel_to=(2, 16))
    beta_docked = transform(beta, rot2, trans2)
    ca_a = {s: dict(a)["CA"] for _, s, a in alpha}
    ca_b = {s: dict(a)["CA"] for _, s, a in beta_docked}
    pairs = sorted(
        ((np.linalg.norm(ca_a[i] - ca_b[j]), i, j) for i in ca_a for j in ca_b),
    )
    close = [p for p in pairs if p[0] < 8.0][:12]
    far = [p for p in pairs if p[0] > 20.0]
    rows = []
    for rank, (d, i, j) in enumerate(close):
        rows.append((i, j, round(1.0 - 0.05 * rank, 3)))
    d, i, j = far[len(far) // 2]
    rows.append((i, j, 0.12))
    with open(os.path.join(OUT, "qop_contacts.txt"), "w") as fh:
        fh.write("# residue_A residue_B score  (synthetic coevolution-style contacts)\n")
        fh.write("i j score\n")
        for i, j, s in rows:
            fh.write("A:%d B:%d %.3f\n" % (i, j, s))
    q2 = quat_from_matrix(rot2)
    with open(os.path.join(OUT, "qop_docked_pose.txt"), "w") as fh:
        fh.write("# docked pose of chain B (angstrom translation, quaternion w x y z)\n")
        fh.write("quat %.9f %.9f %.9f %.9f\n" % tuple(q2))
        fh.write("translation %.6f %.6f %.6f\n" % tuple(trans2))


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    lys_glu()
    diels_alder()
    heme_and_probe()
    proteins()
