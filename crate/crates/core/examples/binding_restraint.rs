//! A binding restraint pulling two anchors toward a target separation.
use molsteer::restraints::BindingRestraint;
use molsteer::Vec3;
use nalgebra::UnitQuaternion;

fn main() {
    let mut restraint = BindingRestraint::new(0, 0, 4.0, 0.3, 0.5);
    let a = Vec3::zeros();
    let mut b = Vec3::new(12.0, 3.0, -2.0);
    let identity = UnitQuaternion::identity();

    for tick in 0..25 {
        b += restraint.apply(&a, &b, &identity, 1.0);
        if tick % 4 == 0 {
            println!("tick {tick:>2}  distance {:.3} Å", (b - a).norm());
        }
    }
    println!("final distance {:.4} Å", (b - a).norm());
}
