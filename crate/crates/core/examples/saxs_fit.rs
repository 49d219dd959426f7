//! Debye profile of a bead model and its fit against a noisy reference.
use molsteer::model::{build_model, Scheme};
use molsteer::molio::parse_pdb;
use molsteer::observables::{fit_saxs, linspace, saxs_debye, synth_reference};
use molsteer::Vec3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> molsteer::Result<()> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/fixtures/ubiquitin_1d3z_synthetic.pdb"
    );
    let molecule = parse_pdb(&std::fs::read_to_string(path).expect("fixture is readable"))?;
    let model = build_model(&molecule, Scheme::Bbsc, 1.0)?;
    let positions: Vec<Vec3> = model.beads.iter().map(|b| b.center).collect();
    let f: Vec<f64> = model.beads.iter().map(|b| b.electrons).collect();

    let q = linspace(0.0, 0.5, 51);
    let profile = saxs_debye(&positions, &f, &q);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let reference = synth_reference(&profile, 0.02, 1.0, &mut rng);

    let fit = fit_saxs(&profile, &reference)?;
    println!("{} beads, I(0) = {:.4e}", model.len(), profile.intensity[0]);
    println!(
        "self fit: chi {:.3}, scale {:.4}, {} points",
        fit.chi, fit.scale, fit.points
    );

    let stretched: Vec<Vec3> = positions.iter().map(|p| Vec3::new(p.x * 1.3, p.y, p.z)).collect();
    let other = fit_saxs(&saxs_debye(&stretched, &f, &q), &reference)?;
    println!("stretched model: chi {:.3}", other.chi);
    Ok(())
}
