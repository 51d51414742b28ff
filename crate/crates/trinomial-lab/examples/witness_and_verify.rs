//! Construct the catalog witnesses by hand and inspect their nilpotency
//! certificates: the exponent-1 witness, the square-root witness on the
//! two-even-group shape, and the slice witness with its exponential.

use trinomial_lab::lnd::{verify_lnd, witness_case1, witness_case2, witness_gamma, LndVerdict, SqrtWitness};
use trinomial_lab::rational::rat;
use trinomial_lab::variety::TrinomialHypersurface;

fn main() {
    // t^2 x^3 + y + z^5: exponent-1 witness on y.
    let h = TrinomialHypersurface::unit_coeffs([vec![2, 3], vec![1], vec![5]], 0).unwrap();
    let w = witness_case1(&h, 1, 1, 64).unwrap();
    println!("case-1 witness on {}:", h.defining_polynomial());
    println!("{}\n", serde_json::to_string_pretty(&w.to_json()).unwrap());

    // x^2 - y^2 - z^3: square-root witness (realizable sign pattern).
    let h = TrinomialHypersurface::new(
        [vec![2], vec![2], vec![3]],
        [rat(1), rat(-1), rat(-1)],
        0,
    )
    .unwrap();
    match witness_case2(&h, 0, 1, 1, 1, 64).unwrap() {
        SqrtWitness::Witness(w) => {
            println!("case-2 witness on {}:", h.defining_polynomial());
            println!("{}\n", serde_json::to_string_pretty(&w.to_json()).unwrap());
        }
        SqrtWitness::NeedsScaling(_) => unreachable!("(1,-1,-1) is realizable"),
    }

    // x^2 + y^2 + z^3: same shape, sign-obstructed over the rationals.
    let h = TrinomialHypersurface::unit_coeffs([vec![2], vec![2], vec![3]], 0).unwrap();
    match witness_case2(&h, 0, 1, 1, 1, 64).unwrap() {
        SqrtWitness::NeedsScaling(sc) => {
            let space = h.space();
            println!("sign obstruction on {}:", h.defining_polynomial());
            println!("{}\n", serde_json::to_string_pretty(&sc.to_json(&space)).unwrap());
        }
        SqrtWitness::Witness(_) => unreachable!("(+,+,+) is not realizable"),
    }

    // x^2 + y^3 + z w^2: slice witness and its exponential flow.
    let h = TrinomialHypersurface::unit_coeffs([vec![2], vec![3], vec![1, 2]], 0).unwrap();
    let w = witness_gamma(&h, 0, 1, 64).unwrap();
    println!("gamma witness on {}:", h.defining_polynomial());
    match verify_lnd(&w.derivation, 64) {
        LndVerdict::Lnd(cert) => println!("locally nilpotent, chain bound {}", cert.bound),
        LndVerdict::UnknownWithinCap { generator } => {
            println!("chain for {generator} did not close")
        }
    }
    let phi = w.derivation.exp_automorphism(&rat(5), 64).unwrap();
    let space = h.space();
    for (v, image) in phi.iter().enumerate() {
        println!("  exp(5·γ): {} ↦ {}", space.name(v), image);
    }
}
