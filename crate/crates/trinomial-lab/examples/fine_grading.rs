//! Compute the finest torus grading of a trinomial coordinate ring; for a
//! hypersurface in n variables its rank is n − 1, confirming the
//! complexity-one torus action on the variety.

use trinomial_lab::grading::fine_grading;
use trinomial_lab::variety::TrinomialHypersurface;

fn main() {
    for groups in [
        [vec![2], vec![3], vec![5]],
        [vec![2], vec![2], vec![2]],
        [vec![2], vec![3], vec![1, 2]],
        [vec![2, 3], vec![5], vec![7]],
    ] {
        let h = TrinomialHypersurface::unit_coeffs(groups, 0).unwrap();
        let ring = h.ring().unwrap();
        let g = fine_grading(&ring);
        println!("{} = 0", h.defining_polynomial());
        println!("{}\n", serde_json::to_string_pretty(&g.to_json(&ring)).unwrap());
    }
}
