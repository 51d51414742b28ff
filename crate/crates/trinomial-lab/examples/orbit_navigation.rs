//! Navigate between rational points on a trinomial hypersurface with
//! explicit one-parameter subgroup steps, and replay the path exactly.

use trinomial_lab::lnd::{orbit_path, OrbitOutcome};
use trinomial_lab::rational::{format_rat, rat};
use trinomial_lab::variety::TrinomialHypersurface;

fn main() {
    // X = x^2 + y^2 + z w: slice w = const ≠ 0.
    let h = TrinomialHypersurface::unit_coeffs([vec![2], vec![2], vec![1, 1]], 0).unwrap();
    let p = [rat(1), rat(0), rat(1), rat(-1)];
    let q = [rat(0), rat(1), rat(1), rat(-1)];
    println!("on {} = 0:", h.defining_polynomial());
    match orbit_path(&h, &p, &q, 64).unwrap() {
        OrbitOutcome::Path(path) => {
            for step in &path.steps {
                println!("  apply exp({} · {})", format_rat(&step.time), step.label);
            }
            println!("  replay exact: {}", path.replay(&h, 64).unwrap());
        }
        OrbitOutcome::NotCovered { reason } => println!("  not covered: {reason}"),
    }

    // x^2 - y^2 - z w^3: the two-even-group shape with square-root steps.
    let h = TrinomialHypersurface::new(
        [vec![2], vec![2], vec![1, 3]],
        [rat(1), rat(-1), rat(-1)],
        0,
    )
    .unwrap();
    let p = [rat(3), rat(1), rat(8), rat(1)];
    let q = [rat(5), rat(-1), rat(24), rat(1)];
    println!("on {} = 0:", h.defining_polynomial());
    match orbit_path(&h, &p, &q, 64).unwrap() {
        OrbitOutcome::Path(path) => {
            for step in &path.steps {
                println!("  apply exp({} · {})", format_rat(&step.time), step.label);
            }
            println!("  replay exact: {}", path.replay(&h, 64).unwrap());
        }
        OrbitOutcome::NotCovered { reason } => println!("  not covered: {reason}"),
    }
}
