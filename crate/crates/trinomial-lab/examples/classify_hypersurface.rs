//! Classify a few trinomial hypersurfaces and print the full reports:
//! a rigid one, a flexible one, an intermediate one with a proven
//! Makar-Limanov invariant, and a sign-obstructed nonrigid one.

use trinomial_lab::classify::classify_hypersurface;
use trinomial_lab::variety::TrinomialHypersurface;

fn main() {
    let cases: Vec<(&str, [Vec<u32>; 3])> = vec![
        ("t^2 x^3 + y^5 + z^7 (rigid)", [vec![2, 3], vec![5], vec![7]]),
        ("t^2 x^2 + y^2 + z^5 (flexible H2)", [vec![2, 2], vec![2], vec![5]]),
        ("t^4 x^2 + y^2 + z^5 (intermediate B)", [vec![4, 2], vec![2], vec![5]]),
        ("1 + x y^2 + z^3 (intermediate A)", [vec![], vec![1, 2], vec![3]]),
        ("x^2 + y^2 + z^3 (needs scaling)", [vec![2], vec![2], vec![3]]),
    ];
    for (label, groups) in cases {
        let h = TrinomialHypersurface::unit_coeffs(groups, 0).expect("valid descriptor");
        let report = classify_hypersurface(&h).expect("classification succeeds");
        println!("== {label}");
        println!("   equation: {} = 0", h.defining_polynomial());
        println!("{}\n", serde_json::to_string_pretty(&report.to_json()).unwrap());
    }
}
