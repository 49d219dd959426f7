//! Two-site proton exchange: occupancy with the gate open, silence with it closed.
use molsteer::interact::{proton_transfer_step, ProtonParams, ProtonState, Site};

fn main() {
    let params = ProtonParams::default();
    let mut state = ProtonState::new([0.7, 0.3], 42);

    let steps = 50_000;
    let mut on_donor = 0usize;
    for _ in 0..steps {
        proton_transfer_step(&mut state, 1.5, 0.2, &params);
        if state.holder == Site::Donor {
            on_donor += 1;
        }
    }
    println!(
        "gate open: donor occupancy {:.3} over {} hops",
        on_donor as f64 / steps as f64,
        state.hops
    );

    let hops = state.hops;
    for _ in 0..steps {
        proton_transfer_step(&mut state, 2.5, 0.2, &params);
    }
    println!("gate closed: {} further hops", state.hops - hops);
}
