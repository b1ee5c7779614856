mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use matpoly_core::algebra::{rational_pow, IntPoly};
use matpoly_core::graphs::{complete_graph, cycle_graph, MultiGraph};
use matpoly_core::identities::{
    chi_dual_via_finaltwo, flow_via_connected_partitions, uniform_split_holds, verify_identity,
    verify_finaltwo_with_weight, zeta_q, IdentityKind,
};
use matpoly_core::invariants::{chi_subset, chromatic_poly_vertex, flow_poly};
use matpoly_core::matroids::{dual, make_graphic, make_uniform};
use matpoly_core::targets::Target;
use matpoly_core::Error;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn dual_formula_matches_subset_sum_on_corpus() {
    for t in common::corpus() {
        let m = t.as_matroid();
        assert_eq!(
            chi_dual_via_finaltwo(&*m).unwrap(),
            chi_subset(&dual(&*m)).unwrap(),
            "{}",
            t.descriptor()
        );
    }
}

#[test]
fn connected_partitions_give_the_flow_polynomial() {
    let mut graphs = common::small_graphs(6);
    graphs.extend(common::multigraphs());
    for g in graphs {
        assert_eq!(
            flow_via_connected_partitions(&g).unwrap(),
            flow_poly(&g).unwrap(),
            "{:?}",
            g.edges()
        );
    }
}

#[test]
fn every_kind_on_a_few_targets() {
    let targets = [
        Target::graph(cycle_graph(4), "C4"),
        Target::graph(common::k5_minus_edge(), "K5-e"),
        Target::parse("pg:3,2").unwrap(),
        Target::parse("uniform:3,6:dual").unwrap(),
    ];
    for t in &targets {
        for kind in IdentityKind::ALL {
            match verify_identity(kind, t, &[]) {
                Ok(report) => {
                    assert!(report.pass, "{kind} on {}: {:?}", t.descriptor(), report.first_mismatch);
                    assert_eq!(report.certified, kind.is_exact());
                }
                Err(Error::BadParams(_)) => assert_eq!(kind, IdentityKind::UniformSplit),
                Err(e) => panic!("{kind} on {}: {e}", t.descriptor()),
            }
        }
    }
}

#[test]
fn enough_samples_certify() {
    let t = Target::parse("uniform:1,2").unwrap();
    let samples: Vec<BigRational> = (2..=9).map(r).collect();
    let report = verify_identity(IdentityKind::Thm1One, &t, &samples).unwrap();
    assert_eq!(report.degree_bound, Some(6));
    assert!(report.pass && report.certified);
}

#[test]
fn dropping_the_weight_breaks_the_dual_formula() {
    let k3 = Target::graph(complete_graph(3), "K3");
    let report = verify_finaltwo_with_weight(&k3, &|_| IntPoly::one()).unwrap();
    assert!(!report.pass);
    let ok = verify_finaltwo_with_weight(&k3, &IntPoly::one_minus_x_pow).unwrap();
    assert!(ok.pass);
}

#[test]
fn split_is_specific_to_uniform_matroids() {
    assert!(!uniform_split_holds(&make_graphic(&complete_graph(4)).unwrap()).unwrap());
    assert!(!uniform_split_holds(&make_uniform(0, 0).unwrap()).unwrap());
    for n in 1..=6 {
        for m in 0..=n {
            assert!(uniform_split_holds(&make_uniform(m, n).unwrap()).unwrap(), "U({m},{n})");
        }
    }
}

/// Right side of the inverse graph formula with the factor `c^(|E|-|A|)`
/// in place of the alternating sign.
fn inverse_rhs(g: &MultiGraph, q: &BigRational, c: &BigRational) -> BigRational {
    let n = g.edge_count();
    let z1 = zeta_q(q, 1).unwrap();
    g.all_edges()
        .subsets()
        .map(|a| {
            let h = g.edge_subgraph(a);
            let p = chromatic_poly_vertex(&h).unwrap().eval_rational(q);
            rational_pow(c, (n - a.len()) as i64)
                * p
                * rational_pow(q, -(h.vertex_count() as i64))
                * rational_pow(&z1, a.len() as i64)
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

#[test]
fn inverse_formula_needs_an_alternating_sign() {
    let g = complete_graph(2);
    for q in [r(2), r(3), r(5)] {
        let lhs = flow_poly(&g).unwrap().eval_rational(&q)
            * rational_pow(&zeta_q(&q, -1).unwrap(), g.edge_count() as i64);
        assert_eq!(inverse_rhs(&g, &q, &r(-1)), lhs);
        assert_ne!(inverse_rhs(&g, &q, &(&q - r(1))), lhs, "q = {q}");
    }
}
