//! Parse a PDB fixture, assign neutral-pH charges and print a residue summary.
use molsteer::molio::{assign_neutral_ph_charges, parse_pdb, write_pdb};

fn main() -> molsteer::Result<()> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/fixtures/ubiquitin_1d3z_synthetic.pdb"
    );
    let text = std::fs::read_to_string(path).expect("fixture is readable");
    let molecule = assign_neutral_ph_charges(parse_pdb(&text)?);

    println!("{} atoms in {} residues", molecule.atoms.len(), molecule.residues.len());
    println!("net charge {:+.1}", molecule.net_charge());
    let charged = molecule.residues.iter().filter_map(|residue| {
        let q: f64 = residue.atoms.iter().map(|&i| molecule.atoms[i].formal_charge).sum();
        (q != 0.0).then_some((residue, q))
    });
    for (residue, q) in charged.take(6) {
        println!(
            "  {}{:>4} {} atoms={} charge={q:+.1}",
            residue.chain_id,
            residue.seq,
            residue.name,
            residue.atoms.len()
        );
    }

    let again = parse_pdb(&write_pdb(&molecule))?;
    println!("round trip keeps {} atoms", again.atoms.len());
    Ok(())
}
