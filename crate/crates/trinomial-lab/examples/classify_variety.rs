//! Classify trinomial varieties given by chained systems of Type 1 and
//! Type 2, including the factoriality gate for Type 2 and the suspension
//! lift witness.

use trinomial_lab::classify::classify_variety;
use trinomial_lab::rational::rat;
use trinomial_lab::variety::{TrinomialVariety, VarietyKind};

fn main() {
    let cases = vec![
        (
            "Type 1, monomials (T11^2, T21 T22, T31^2), a = (1,2,3): rigid",
            TrinomialVariety::new(
                VarietyKind::Type1 { a: vec![rat(1), rat(2), rat(3)] },
                vec![vec![2], vec![1, 1], vec![2]],
                0,
            ),
        ),
        (
            "Type 1, monomials (T11^2 T12, T21 T22^3, T31^5): nonrigid",
            TrinomialVariety::new(
                VarietyKind::Type1 { a: vec![rat(0), rat(1), rat(3)] },
                vec![vec![2, 1], vec![1, 3], vec![5]],
                0,
            ),
        ),
        (
            "Type 2, non-factorial: outside the criterion",
            TrinomialVariety::new(
                VarietyKind::Type2 {
                    a: [
                        vec![rat(1), rat(0), rat(1), rat(1)],
                        vec![rat(0), rat(1), rat(1), rat(2)],
                    ],
                },
                vec![vec![2], vec![2], vec![2], vec![3]],
                0,
            ),
        ),
        (
            "Type 2, factorial with exponent-1 groups: nonrigid",
            TrinomialVariety::new(
                VarietyKind::Type2 {
                    a: [
                        vec![rat(1), rat(0), rat(1), rat(1)],
                        vec![rat(0), rat(1), rat(1), rat(2)],
                    ],
                },
                vec![vec![2], vec![3], vec![1, 2], vec![1, 5]],
                0,
            ),
        ),
    ];
    for (label, v) in cases {
        let v = v.expect("valid descriptor");
        println!("== {label}");
        for g in v.defining_polynomials() {
            println!("   {g} = 0");
        }
        let report = classify_variety(&v).expect("classification succeeds");
        println!("{}\n", serde_json::to_string_pretty(&report.to_json()).unwrap());
    }
}
