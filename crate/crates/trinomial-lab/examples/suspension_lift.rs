//! Suspensions over affine space: irreducibility, re-expression as a
//! trinomial hypersurface, lifting an LND through a weight-1 suspension,
//! and the graded descent to the degree-zero subring.

use std::sync::Arc;
use trinomial_lab::derivation::Derivation;
use trinomial_lab::lnd::{descend_nod, lift_suspension};
use trinomial_lab::poly::parse_poly;
use trinomial_lab::quotient::PresentedRing;
use trinomial_lab::space::VariableSpace;
use trinomial_lab::variety::{suspend, SuspensionSpec};
use trinomial_lab::Poly;

fn main() {
    // Susp(K^2, x^2 + y^3; weights 2, 5) re-expresses as a trinomial.
    let space = VariableSpace::plain(vec!["x".into(), "y".into()]);
    let spec = SuspensionSpec {
        base: PresentedRing::free(space.clone()),
        f: parse_poly(&space, "-x^2 - y^3").unwrap(),
        weights: vec![2, 5],
    };
    let susp = suspend(&spec).unwrap();
    println!("relation {} = 0", susp.ring.relations()[0]);
    println!("irreducible: {}", susp.irreducibility.is_irreducible());
    if let Some(h) = &susp.reexpressed {
        println!("re-expressed: {} = 0\n", h.defining_polynomial());
    }

    // Lift d/dx through a weight-1 suspension y_1 y_2^3 = x^3 + u.
    let space = VariableSpace::plain(vec!["x".into(), "u".into()]);
    let base = PresentedRing::free(space.clone());
    let ddx = Derivation::unchecked(
        Arc::new(base.clone()),
        vec![Poly::one(&space), Poly::zero(&space)],
    );
    let spec = SuspensionSpec {
        base,
        f: parse_poly(&space, "x^3 + u").unwrap(),
        weights: vec![1, 3],
    };
    let lifted = lift_suspension(&ddx, &spec, 64).unwrap();
    let ext = lifted.derivation.ring.space().clone();
    println!("lift of d/dx through y_1 y_2^3 = x^3 + u:");
    for v in 0..ext.len() {
        if !lifted.derivation.images[v].is_zero() {
            println!("  δ({}) = {}", ext.name(v), lifted.derivation.images[v]);
        }
    }

    // Descend a torus-homogeneous LND on Susp(K^1, x; 2, 3) to the
    // degree-zero subring K[x][z]/(z − x).
    let space = VariableSpace::plain(vec!["x".into()]);
    let base = PresentedRing::free(space.clone());
    let spec = SuspensionSpec {
        base,
        f: parse_poly(&space, "x").unwrap(),
        weights: vec![2, 3],
    };
    let susp = suspend(&spec).unwrap();
    let ring = Arc::new(susp.ring);
    let s = ring.space().clone();
    let hom = Derivation::extend_and_check(
        ring.clone(),
        vec![
            parse_poly(&s, "2*y_1*y_2^6").unwrap(),
            parse_poly(&s, "y_2^3").unwrap(),
            Poly::zero(&s),
        ],
    )
    .unwrap();
    let descended = descend_nod(&hom, &spec, &ring, &susp.new_vars, 64).unwrap();
    let zs = descended.derivation.ring.space().clone();
    println!("\ndescent to the degree-zero subring:");
    for v in 0..zs.len() {
        println!("  δ({}) = {}", zs.name(v), descended.derivation.images[v]);
    }
}
