//! Bead-rod linker following moving anchors, and the worm-like-chain force curve.
use molsteer::linker::{build_linker, extension_check, step_linker, wlc_force, SolverParams, WlcParams};
use molsteer::Vec3;

fn main() -> molsteer::Result<()> {
    let (n, b) = (6, 3.8);
    let mut a = Vec3::zeros();
    let mut z = Vec3::new(10.0, 2.0, 0.0);
    let mut chain = build_linker(n, b, &a, &z, 1.0)?;
    let params = SolverParams::default();

    for tick in 0..=40 {
        let s = tick as f64 * 0.1;
        a = Vec3::new(0.0, s.sin(), 0.0);
        z = Vec3::new(10.0 + 8.0 * (0.5 * s).sin(), 2.0 * s.cos(), 0.0);
        step_linker(&mut chain, &a, &z, &[], &params);
        if tick % 8 == 0 {
            let (state, _) = extension_check((z - a).norm(), n, b);
            println!(
                "tick {tick:>2}  separation {:>6.2} Å  {state:?}  max bond error {:.2e} Å",
                (z - a).norm(),
                chain.max_bond_residual(&a, &z)
            );
        }
    }

    let wlc = WlcParams {
        contour: (n + 1) as f64 * b,
        persistence: 4.0,
        kt: 4.11,
    };
    for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!("x/L = {frac:.1}  f = {:.2} pN", wlc_force(frac * wlc.contour, &wlc)?);
    }
    Ok(())
}
