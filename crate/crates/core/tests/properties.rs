mod common;

use proptest::prelude::*;

use elevenfloer::algebra::{snf, Matrix};
use elevenfloer::cover::route;
use elevenfloer::diagram::{canonicalize, validate, DiagramDescription};
use elevenfloer::floer::{bigons, DEFAULT_WINDOW_LIMIT};
use elevenfloer::run_diagram;

/// First valid diagram among a run of seeds.
fn valid_diagram(n: usize, seed: u64) -> Option<DiagramDescription> {
    (seed..seed + 400).map(|s| common::random_diagram(n, s)).find(|d| validate(d).is_ok())
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_diagrams_pass_every_check(n in 1usize..=12, seed in any::<u32>()) {
        let Some(d) = valid_diagram(n, seed as u64 * 1000) else { return Ok(()) };
        let run = run_diagram(&d, DEFAULT_WINDOW_LIMIT).map_err(|e| TestCaseError::fail(format!("{e}: {}", d.to_json())))?;
        prop_assert!(run.analysis.checks.values().all(|&ok| ok));
        common::property_suite(&run.analysis.complex).map_err(TestCaseError::fail)?;
        prop_assert_eq!(common::library_ranks(&run.analysis.complex), common::hfk_ranks_mod(&run.analysis.complex, 1_000_003));
        prop_assert_eq!(run.analysis.tau, common::tau_mod(&run.analysis.complex, 1_000_003));
        prop_assert!(run.analysis.tau.abs() <= run.analysis.table.genus);
    }

    #[test]
    fn bigons_stable_under_doubling(n in 1usize..=12, seed in any::<u32>()) {
        let Some(d) = valid_diagram(n, seed as u64 * 1000) else { return Ok(()) };
        let run = run_diagram(&d, DEFAULT_WINDOW_LIMIT).unwrap();
        let w = run.lifted.window();
        let key = |b: &[elevenfloer::floer::BigonClass]| b.iter().map(|c| c.key()).collect::<Vec<_>>();
        let twice = bigons(&route(&run.diagram, 2 * w).unwrap());
        let four = bigons(&route(&run.diagram, 4 * w).unwrap());
        prop_assert_eq!(key(&run.bigons), key(&twice));
        prop_assert_eq!(key(&twice), key(&four));
    }

    #[test]
    fn swapping_basepoints_keeps_hfk(n in 1usize..=12, seed in any::<u32>()) {
        let Some(d) = valid_diagram(n, seed as u64 * 1000) else { return Ok(()) };
        let mut s = d.clone();
        std::mem::swap(&mut s.w, &mut s.z);
        let a = run_diagram(&d, DEFAULT_WINDOW_LIMIT).unwrap();
        let b = run_diagram(&s, DEFAULT_WINDOW_LIMIT).unwrap();
        prop_assert_eq!(a.analysis.table.groups, b.analysis.table.groups);
    }

    #[test]
    fn canonicalize_is_idempotent(n in 1usize..=12, seed in any::<u32>()) {
        let d = common::random_diagram(n, seed as u64);
        let c = canonicalize(&d);
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert_eq!(validate(&d).is_ok(), validate(&c).is_ok());
    }

    #[test]
    fn snf_postconditions(rows in matrix()) {
        let a = Matrix::from_rows(&rows);
        let s = snf(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), Matrix::identity(a.cols()));
        prop_assert_eq!(s.u.det().unwrap().abs(), 1);
        prop_assert_eq!(s.v.det().unwrap().abs(), 1);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        for p in common::PRIMES {
            let rank_p = f.iter().filter(|&&x| x % p != 0).count();
            prop_assert_eq!(rank_p, common::rank_mod(&rows, p));
        }
    }
}
