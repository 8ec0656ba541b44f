//! The closed formulas against brute-force counts over small prime fields.

mod common;

use common::dv;
use kacpoly::algebra::LaurentPolynomial;
use kacpoly::hua::{arrow_pairing, c_pi, coha_char_nilp, kac_polynomials, n_pi_weight};
use kacpoly::oracle::{
    count, count_nilpotent_pairs_by_stratum, endomorphism_basis, enumerate_reps, FpMatrix, OracleConfig, OracleError,
};
use kacpoly::partitions::multipartitions_of;
use kacpoly::quiver::{Arrow, Quiver};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn strata_match_their_hua_terms() {
    let config = OracleConfig::default();
    let cases = [
        (Quiver::point(), dv(&[3])),
        (Quiver::jordan(), dv(&[2])),
        (Quiver::kronecker(), dv(&[1, 2])),
        (Quiver::a2(), dv(&[2, 2])),
    ];
    for (quiver, gamma) in cases {
        for p in [2, 3] {
            let by_stratum = count_nilpotent_pairs_by_stratum(&quiver, &gamma, p, &config).unwrap();
            let all: Vec<_> = multipartitions_of(&gamma).collect();
            assert_eq!(by_stratum.len(), all.len(), "{gamma} p={p}");
            for pi in all {
                let expected = c_pi(&quiver, &pi).evaluate_q(&rat(p)).unwrap();
                assert_eq!(by_stratum[&pi], expected, "{pi} p={p}");
            }
        }
    }
}

#[test]
fn stratum_weight_identity() {
    // c_π · n_π = q^{Σ_a ⟨π(s a), π(t a)⟩} as rational functions
    let quivers = [
        Quiver::kronecker(),
        Quiver::loops(2),
        Quiver::new(3, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 2), Arrow::new("c", 2, 2)]).unwrap(),
    ];
    for quiver in &quivers {
        let bound = kacpoly::dimension::DimensionVector::constant(quiver.vertex_count(), 3);
        for gamma in bound.box_iter() {
            for pi in multipartitions_of(&gamma) {
                let lhs = &c_pi(quiver, &pi) * &n_pi_weight(&pi);
                let rhs = LaurentPolynomial::q_pow(arrow_pairing(quiver, &pi) as i64);
                assert_eq!(lhs, rhs.into());
            }
        }
    }
}

#[test]
fn kac_polynomials_count_indecomposables_on_a_cyclic_quiver() {
    // the oriented 2-cycle: a_(1,1) = q + 1 like the Kronecker quiver
    let cyclic = Quiver::new(2, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 0)]).unwrap();
    let table = kac_polynomials(&cyclic, &dv(&[2, 2])).unwrap();
    assert_eq!(table.get(&dv(&[1, 1])).unwrap().to_string(), "q + 1");
    let config = OracleConfig::default();
    for gamma in dv(&[2, 2]).box_iter().skip(1) {
        for p in [2, 3] {
            let c = count(&cyclic, &gamma, p, &config).unwrap();
            let expected = table.get(&gamma).unwrap().evaluate_q(&rat(p)).unwrap();
            assert_eq!(BigRational::from_integer(c.absolutely_indecomposable().unwrap()), expected, "{gamma} p={p}");
        }
    }
}

#[test]
fn nilpotent_series_at_p_five() {
    let config = OracleConfig::default();
    let quiver = Quiver::kronecker();
    let series = coha_char_nilp(&quiver, &dv(&[1, 1])).unwrap();
    for (gamma, c) in series.iter() {
        let oracle = count(&quiver, &gamma, 5, &config).unwrap();
        assert_eq!(oracle.nilpotent_pairs(), c.evaluate_q(&rat(5)).unwrap());
    }
}

#[test]
fn enumeration_is_complete_and_end_contains_identity() {
    let config = OracleConfig::default();
    let quiver = Quiver::new(2, vec![Arrow::new("a", 0, 1), Arrow::new("l", 1, 1)]).unwrap();
    let gamma = dv(&[1, 2]);
    let reps: Vec<_> = enumerate_reps(&quiver, &gamma, 2, &config).unwrap().collect();
    assert_eq!(reps.len(), 1 << 6);
    let mut seen = std::collections::HashSet::new();
    for rep in &reps {
        assert!(seen.insert(rep.matrices().to_vec()));
        let basis = endomorphism_basis(rep);
        // the identity solves the system, so it lies in the span: rank does not grow
        let flat = |f: &Vec<FpMatrix>| f.iter().flat_map(|m| m.entries().to_vec()).collect::<Vec<u32>>();
        let mut rows: Vec<u32> = basis.iter().flat_map(flat).collect();
        let width = 1 + 4;
        let identity = vec![FpMatrix::identity(1, 2), FpMatrix::identity(2, 2)];
        rows.extend(flat(&identity));
        let m = FpMatrix::new(basis.len() + 1, width, 2, rows);
        assert_eq!(m.rank(), basis.len());
    }
}

#[test]
fn budgets_are_enforced() {
    let tight = OracleConfig {
        enumeration_budget: 1 << 24,
        endomorphism_budget: 8,
    };
    // the zero representation of the point quiver at n = 2 has a 4-dimensional End
    let err = count(&Quiver::point(), &dv(&[2]), 2, &tight).unwrap_err();
    assert_eq!(
        err,
        OracleError::BudgetExceeded {
            what: "endomorphism scan",
            cost: 16,
            budget: 8
        }
    );
    let err = count(&Quiver::loops(3), &dv(&[3]), 3, &OracleConfig::default()).unwrap_err();
    assert!(matches!(err, OracleError::BudgetExceeded { what: "representation enumeration", .. }));
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| count(&Quiver::kronecker(), &dv(&[2, 2]), 2, &OracleConfig::default()).unwrap())
    };
    assert_eq!(run(1), run(3));
}
