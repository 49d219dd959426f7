//! Diels–Alder bond progress along an approach path, with the face latch.
use molsteer::interact::{diels_alder_progress, diels_alder_step, ReactionGeometry, ReactionParams, ReactionState};
use molsteer::Vec3;

fn main() {
    let params = ReactionParams::default();
    println!("progress by distance:");
    for d in [4.5, 4.0, 3.5, 3.0, 2.5, 2.2, 2.0] {
        println!("  d = {d:.1} Å  p = {:.3}", diels_alder_progress(d, d, &params));
    }

    let ends = [Vec3::new(-1.4, 0.0, 0.0), Vec3::new(1.4, 0.0, 0.0)];
    let plane = [ends[0], ends[1], Vec3::new(0.0, 1.2, 0.0)];
    let mut state = ReactionState::default();
    for height in [5.0, 4.0, 3.2, 2.6, 2.1, 3.5, 5.0] {
        let geometry = ReactionGeometry {
            diene_ends: ends,
            dienophile: [ends[0] + Vec3::z() * height, ends[1] + Vec3::z() * height],
            diene_plane: plane,
        };
        state = diels_alder_step(&state, &geometry, &params);
        println!(
            "height {height:.1}  p = {:.3}  formed = {}  face = {:?}",
            state.progress, state.formed, state.face_sign
        );
    }
}
