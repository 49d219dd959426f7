//! Load a coevolution-style contact table and score it at the docked pose.
use molsteer::engine::{Engine, Scalar};
use molsteer::molio::SceneConfig;
use molsteer::restraints::{load_contacts, percentile_thresholds};

fn main() -> molsteer::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let table = std::fs::read_to_string(format!("{dir}/fixtures/qop_contacts.txt")).expect("fixture is readable");
    let set = load_contacts(&table, None, 8.0)?;
    let scores: Vec<f64> = set.contacts.iter().map(|c| c.score).collect();
    let [high, mid] = percentile_thresholds(&scores);
    println!("{} contacts, thresholds high {high:.3} mid {mid:.3}", set.len());
    for c in set.contacts.iter().take(5) {
        println!("  {} - {}  {:.3}  {:?}", c.res_a, c.res_b, c.score, c.class);
    }

    let mut engine = Engine::new(SceneConfig::from_path(format!("{dir}/scenes/qop_contacts.json"))?)?;
    let frame = engine.tick(0.05);
    println!(
        "initial pose: {} resolved, satisfaction {:?}",
        frame.readouts.get(Scalar::ContactsResolved).unwrap_or(0.0),
        frame.readouts.get(Scalar::ContactSatisfaction)
    );
    Ok(())
}
