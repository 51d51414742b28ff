//! Brute-force search for homogeneous locally nilpotent derivations of
//! bounded degree — the independent cross-check for classifier verdicts.

use std::sync::Arc;
use trinomial_lab::oracle::search_lnd;
use trinomial_lab::variety::TrinomialHypersurface;

fn main() {
    for (label, groups) in [
        ("x + y^2 + z^2 (nonrigid)", [vec![1], vec![2], vec![2]]),
        ("x^2 + y^3 + z^7 (rigid)", [vec![2], vec![3], vec![7]]),
    ] {
        let h = TrinomialHypersurface::unit_coeffs(groups, 0).unwrap();
        let ring = Arc::new(h.ring().unwrap());
        let hits = search_lnd(&ring, 4, 32).unwrap();
        println!("== {label}: {} homogeneous LND(s) up to image degree 4", hits.len());
        for hit in hits.iter().take(3) {
            let space = ring.space();
            for v in 0..space.len() {
                if !hit.derivation.images[v].is_zero() {
                    println!("   ∂({}) = {}", space.name(v), hit.derivation.images[v]);
                }
            }
            println!("   (chain bound {})", hit.certificate.bound);
        }
        if hits.is_empty() {
            println!("   no LND up to the bound (consistent with rigidity)");
        }
        println!();
    }
}
