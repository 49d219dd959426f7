#!/usr/bin/env python3
"""Regenerate the demo scenes, pose trajectories and command logs.

Each scene gets `<name>.json`, `<name>.trajectory.csv` and
`<name>.commands.txt` under ./scenes. Trajectories are sampled every 0.2 s.

Usage: python3 gen_scenes.py
"""
import json
import math
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.join(HERE, "fixtures")
OUT = os.path.join(HERE, "scenes")
DT = 0.2


def read_pdb(name):
    atoms = {}
    for line in open(os.path.join(FIX, name)):
        if line.startswith(("ATOM", "HETATM")):
            key = (int(line[22:26]), line[12:16].strip())
            atoms[key] = np.array([float(line[30:38]), float(line[38:46]), float(line[46:54])])
    return atoms


def read_pose(name):
    pose = {}
    for line in open(os.path.join(FIX, name)):
        if line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "quat":
            pose["quat"] = [float(x) for x in parts[1:5]]
        elif parts[0] == "translation":
            pose["translation"] = [float(x) for x in parts[1:4]]
    return pose


def quat_to_matrix(q):
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def axis_angle(axis, angle):
    axis = np.asarray(axis, float)
    axis = axis / np.linalg.norm(axis)
    s = math.sin(angle / 2)
    return [math.cos(angle / 2), *(s * axis)]


IDENTITY = [1.0, 0.0, 0.0, 0.0]


def fmt(x):
    return f"{x:.6f}"


def write_trajectory(name, rows):
    """rows: (t, marker, quat, translation_display, visible)"""
    with open(os.path.join(OUT, f"{name}.trajectory.csv"), "w") as fh:
        fh.write("t,marker,qw,qx,qy,qz,tx,ty,tz,visible\n")
        for t, marker, q, tr, vis in rows:
            q = np.asarray(q, float)
            q = q / np.linalg.norm(q)
            cells = [f"{t:.1f}", marker] + [fmt(v) for v in q] + [fmt(v) for v in tr] + [str(int(vis))]
            fh.write(",".join(cells) + "\n")


def write_commands(name, lines):
    with open(os.path.join(OUT, f"{name}.commands.txt"), "w") as fh:
        fh.write("# t verb arg\n")
        for line in lines:
            fh.write(line + "\n")


def write_scene(name, scene):
    with open(os.path.join(OUT, f"{name}.json"), "w") as fh:
        json.dump(scene, fh, indent=2)
        fh.write("\n")


def sel(marker, atom=None, seq=None):
    s = {"marker": marker}
    if seq is not None:
        s["seq"] = seq
    if atom is not None:
        s["atom"] = atom
    return s


def source(name):
    return {"path": f"../fixtures/{name}"}


def lerp(a, b, s):
    return (1 - s) * np.asarray(a, float) + s * np.asarray(b, float)


# ------------------------------------------------------------ lysine/glutamate


def lys_glu():
    zoom = 2.0
    lys = read_pdb("lys_sidechain.pdb")
    glu = read_pdb("glu_sidechain.pdb")
    nz = lys[(1, "NZ")]
    # Glutamate turned half a turn about z so its carboxylate faces the lysine.
    q_glu = axis_angle([0, 0, 1], math.pi)
    rot = quat_to_matrix(q_glu)
    o1, o2 = rot @ glu[(1, "OE1")], rot @ glu[(1, "OE2")]
    mid = 0.5 * (o1 + o2)
    axis = (o2 - o1) / np.linalg.norm(o2 - o1)
    half = 0.5 * np.linalg.norm(o2 - o1)
    # Direction from NZ to the carboxylate midpoint: perpendicular to the O-O
    # axis, pointing away from the lysine chain (-x).
    away = np.array([-1.0, 0.0, 0.0])
    n = away - axis * (away @ axis)
    n /= np.linalg.norm(n)
    target_mid = nz + math.sqrt(4.0 - half * half) * n
    # world = R c + zoom t  =>  t = (target_mid - R mid) / zoom
    t_contact = (target_mid - mid) / zoom
    t_far = t_contact + np.array([-6.0, 0.0, 0.0])

    rows = []
    t = 0.0
    n_approach, n_hold = 30, 20
    for k in range(n_approach + n_hold + 10):
        if k <= n_approach:
            tr = lerp(t_far, t_contact, k / n_approach)
        elif k <= n_approach + n_hold:
            tr = t_contact
        else:
            tr = lerp(t_contact, t_far, (k - n_approach - n_hold) / 10)
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", q_glu, tr, 0 if 40 <= k < 43 else 1))
        t += DT

    write_scene(
        "lys_glu",
        {
            "schema_version": 1,
            "name": "lysine-glutamate salt bridge",
            "rng_seed": 20180901,
            "bodies": [
                {"marker": "hiro", "source": source("lys_sidechain.pdb"), "zoom": zoom,
                 "initial_pose": {"translation": [0, 0, 0]}},
                {"marker": "kanji", "source": source("glu_sidechain.pdb"), "zoom": zoom,
                 "initial_pose": {"rotation": q_glu, "translation": list(t_far)}},
            ],
            "features": {
                "key_distances": [
                    {"label": "NZ-OE1", "a": sel("hiro", "NZ"), "b": sel("kanji", "OE1")},
                    {"label": "NZ-OE2", "a": sel("hiro", "NZ"), "b": sel("kanji", "OE2")},
                ],
                "clash": {"cutoff": 3.0, "halo_opacity": 0.5},
                "electrostatics": {
                    "pairs": [
                        {"a": sel("hiro", "NZ"), "b": sel("kanji", "OE1"), "coupling": 2.0},
                        {"a": sel("hiro", "NZ"), "b": sel("kanji", "OE2"), "coupling": 2.0},
                    ]
                },
                "proton": {
                    "donor": sel("hiro", "NZ"),
                    "proton": sel("hiro", "HZ1"),
                    "acceptor": sel("kanji", "OE1"),
                },
            },
        },
    )
    write_trajectory("lys_glu", rows)
    write_commands("lys_glu", ["4.0 force off", "4.4 force on", "9.0 proton reset"])
    return t_contact


# ------------------------------------------------------------ Diels-Alder


def diels_alder():
    q = IDENTITY
    rows = []
    t = 0.0
    heights = list(np.linspace(6.0, 1.9, 25)) + [1.9] * 5 + list(np.linspace(1.9, 5.0, 10))
    for k, z in enumerate(heights):
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", q, [0.0, 0.0, float(z)], 1))
        t += DT
    write_scene(
        "diels_alder",
        {
            "schema_version": 1,
            "name": "cyclohexadiene + vinyl chloride",
            "bodies": [
                {"marker": "hiro", "source": source("cyclohexadiene.pdb")},
                {"marker": "kanji", "source": source("vinyl_chloride.pdb"),
                 "initial_pose": {"translation": [0, 0, 6.0]}},
            ],
            "features": {
                "key_distances": [
                    {"label": "C1-C1'", "a": sel("hiro", "C1"), "b": sel("kanji", "C1")},
                    {"label": "C4-C2'", "a": sel("hiro", "C4"), "b": sel("kanji", "C2")},
                ],
                "reaction": {
                    "diene_ends": [sel("hiro", "C1"), sel("hiro", "C4")],
                    "dienophile": [sel("kanji", "C1"), sel("kanji", "C2")],
                    "diene_plane": [sel("hiro", "C1"), sel("hiro", "C2"), sel("hiro", "C3")],
                },
            },
        },
    )
    write_trajectory("diels_alder", rows)
    write_commands("diels_alder", ["7.6 reaction reset"])


# ------------------------------------------------------------ heme + probe (PCS)


def heme_pcs():
    rows = []
    t = 0.0
    r = 6.0
    n = 46
    for k in range(n):
        theta = math.pi * k / (n - 1)
        pos = [r * math.sin(theta), 0.0, r * math.cos(theta)]
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", IDENTITY, pos, 1))
        t += DT
    write_scene(
        "heme_pcs",
        {
            "schema_version": 1,
            "name": "heme iron + probe proton",
            "rng_seed": 1964,
            "bodies": [
                {"marker": "hiro", "source": source("heme_site.pdb")},
                {"marker": "kanji", "source": source("probe_h.pdb"),
                 "initial_pose": {"translation": [0, 0, 6.0]}},
            ],
            "features": {
                "key_distances": [{"label": "Fe-H", "a": sel("hiro", "FE"), "b": sel("kanji", "H1")}],
                "pcs": {
                    "metal": sel("hiro", "FE"),
                    "probe": sel("kanji", "H1"),
                    "delta_chi_ax": 2.5,
                    "delta_chi_rh": 0.0,
                    "diamagnetic_shift": 1.5,
                    "grid": {"min": -20.0, "max": 20.0, "points": 801},
                },
            },
        },
    )
    write_trajectory("heme_pcs", rows)
    write_commands("heme_pcs", [])


# ------------------------------------------------------------ ubiquitin + UIM


def docked_path(pose, offset_dir, start, n_approach, n_hold):
    rot = pose["quat"]
    dock = np.asarray(pose["translation"])
    d = np.array(offset_dir, dtype=float)
    d /= np.linalg.norm(d)
    out = []
    for k in range(n_approach + 1):
        s = k / n_approach
        out.append((rot, dock + (1 - s) * start * d))
    out += [(rot, dock)] * n_hold
    return out


def ubiquitin_uim():
    pose = read_pose("ubiquitin_uim_docked_pose.txt")
    dock = np.asarray(pose["translation"])
    path = docked_path(pose, dock, 100.0, 40, 10)
    rows = []
    t = 0.0
    for rot, tr in path:
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", rot, tr, 1))
        t += DT
    start = dock + 100.0 * dock / np.linalg.norm(dock)
    write_scene(
        "ubiquitin_uim",
        {
            "schema_version": 1,
            "name": "ubiquitin + UIM, one bead per residue",
            "rng_seed": 1111,
            "bodies": [
                {"marker": "hiro", "source": source("ubiquitin_1d3z_synthetic.pdb"), "scheme": "ca1"},
                {"marker": "kanji", "source": source("uim_synthetic.pdb"), "scheme": "ca1",
                 "initial_pose": {"rotation": pose["quat"], "translation": list(start)}},
            ],
            "features": {
                "key_distances": [
                    {"label": "I44-A12", "a": sel("hiro", seq=44), "b": sel("kanji", seq=12)}
                ],
                "clash": {"cutoff": 3.0},
                "restraint": {
                    "enabled": False,
                    "anchor_a": sel("hiro", seq=44),
                    "anchor_b": sel("kanji", seq=12),
                    "target_distance": 9.8,
                    "rate": 0.05,
                    "max_step": 1.0,
                },
                "saxs": {
                    "enabled": False,
                    "q": {"min": 0.0, "max": 0.5, "points": 51},
                    "reference": {"synthetic": {"pose": {"rotation": pose["quat"],
                                                         "translation": list(dock)},
                                                "a": 0.02, "b_rel": 1e-6}},
                },
            },
        },
    )
    write_trajectory("ubiquitin_uim", rows)
    write_commands("ubiquitin_uim", ["0.0 saxs on", "8.2 restraint on", "9.4 restraint off"])


# ------------------------------------------------------------ 1QOP contacts


def qop_contacts():
    pose = read_pose("qop_docked_pose.txt")
    dock = np.asarray(pose["translation"])
    path = docked_path(pose, dock, 60.0, 30, 10)
    rows = []
    t = 0.0
    for rot, tr in path:
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", rot, tr, 1))
        t += DT
    start = dock + 60.0 * dock / np.linalg.norm(dock)
    write_scene(
        "qop_contacts",
        {
            "schema_version": 1,
            "name": "1QOP-like alpha/beta pair with coevolution contacts",
            "bodies": [
                {"marker": "hiro", "source": source("qop_alpha_synthetic.pdb"), "scheme": "ca1"},
                {"marker": "kanji", "source": source("qop_beta_synthetic.pdb"), "scheme": "ca1",
                 "initial_pose": {"rotation": pose["quat"], "translation": list(start)}},
            ],
            "features": {
                "clash": {"cutoff": 3.0},
                "contacts": {"source": source("qop_contacts.txt"), "satisfaction_cutoff": 8.0},
            },
        },
    )
    write_trajectory("qop_contacts", rows)
    write_commands("qop_contacts", ["2.0 force off", "3.0 force on"])


# ------------------------------------------------------------ linker


def linker():
    pose = read_pose("ubiquitin_uim_docked_pose.txt")
    dock = np.array(pose["translation"], dtype=float)
    a = read_pdb("ubiquitin_1d3z_synthetic.pdb")[(76, "CA")]
    b = quat_to_matrix(pose["quat"]) @ read_pdb("uim_synthetic.pdb")[(1, "CA")] + dock
    out = (b - a) / np.linalg.norm(b - a)
    reach = 7 * 3.8
    rows = []
    t = 0.0
    # Pull the partner straight away from the ubiquitin C-terminus until the
    # linker is past full extension, then bring it back.
    far = reach + 2.0 - np.linalg.norm(b - a)
    offsets = list(np.linspace(0.0, far, 31)) + list(np.linspace(far, 0.0, 16))
    for s in offsets:
        rows.append((t, "hiro", IDENTITY, [0, 0, 0], 1))
        rows.append((t, "kanji", pose["quat"], dock + s * out, 1))
        t += DT
    write_scene(
        "linker",
        {
            "schema_version": 1,
            "name": "ubiquitin + UIM joined by a six-bead linker",
            "bodies": [
                {"marker": "hiro", "source": source("ubiquitin_1d3z_synthetic.pdb"), "scheme": "bbsc"},
                {"marker": "kanji", "source": source("uim_synthetic.pdb"), "scheme": "bbsc",
                 "initial_pose": {"rotation": pose["quat"], "translation": list(dock)}},
            ],
            "features": {
                "clash": {"cutoff": 3.0},
                "linker": {
                    "anchor_a": sel("hiro", seq=76),
                    "anchor_b": sel("kanji", seq=1),
                    "beads": 6,
                    "bond_length": 3.8,
                    "persistence_length": 4.0,
                },
            },
        },
    )
    write_trajectory("linker", rows)
    write_commands("linker", ["6.6 linker reset"])


def main():
    os.makedirs(OUT, exist_ok=True)
    lys_glu()
    diels_alder()
    heme_pcs()
    ubiquitin_uim()
    qop_contacts()
    linker()


if __name__ == "__main__":
    main()
