//! Build atomistic, one-bead and backbone/side-chain models of the same protein.
use molsteer::model::{build_model, Scheme};
use molsteer::molio::parse_pdb;

fn main() -> molsteer::Result<()> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/fixtures/ubiquitin_1d3z_synthetic.pdb"
    );
    let molecule = parse_pdb(&std::fs::read_to_string(path).expect("fixture is readable"))?;

    for scheme in [Scheme::Atomistic, Scheme::Ca1, Scheme::Bbsc] {
        let model = build_model(&molecule, scheme, 0.1)?;
        let electrons: f64 = model.beads.iter().map(|b| b.electrons).sum();
        let mean_radius = model.beads.iter().map(|b| b.radius).sum::<f64>() / model.len() as f64;
        println!(
            "{scheme:?}: {} beads, {} bonds, mean radius {mean_radius:.2} Å, {electrons:.0} electrons",
            model.len(),
            model.bonds.len()
        );
    }

    let bbsc = build_model(&molecule, Scheme::Bbsc, 0.1)?;
    for bead in bbsc.beads.iter().take(6) {
        println!(
            "  {:<10} {:<4} r={:.2} {}",
            bead.id,
            bead.label,
            bead.radius,
            bead.color()
        );
    }
    Ok(())
}
