use pcnnf_core::cnf::{Cnf, Lit, Var};
use pcnnf_core::propagation::{
    check_assignment, raw_sweep, unit_propagate, verify_strength, Oracle, Property, Scope, UpResult, VerifyOptions,
};
use proptest::prelude::*;

fn arb_cnf(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| Lit::from_dimacs(if s { v } else { -v }).unwrap());
        proptest::collection::vec(proptest::collection::vec(lit, 1..=3), 0..=max_clauses).prop_map(move |clauses| {
            let mut c = Cnf::new(n);
            c.extend(clauses);
            c
        })
    })
}

/// A consistent partial assignment given as one of {unset, true, false} per variable.
fn assignment(n: u32, digits: &[u8]) -> Vec<Lit> {
    (1..=n)
        .zip(digits)
        .filter_map(|(v, &d)| match d % 3 {
            1 => Some(Var(v).pos()),
            2 => Some(Var(v).neg()),
            _ => None,
        })
        .collect()
}

fn brute_models(cnf: &Cnf) -> Vec<u64> {
    (0..1u64 << cnf.num_vars)
        .filter(|&m| {
            let a: Vec<bool> = (0..cnf.num_vars).map(|i| m >> i & 1 == 1).collect();
            cnf.satisfied_by(&a)
        })
        .collect()
}

fn agrees(model: u64, alpha: &[Lit]) -> bool {
    alpha
        .iter()
        .all(|l| (model >> l.var().index() & 1 == 1) == l.is_positive())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn up_is_sound_monotone_and_idempotent(
        cnf in arb_cnf(7, 12),
        a in proptest::collection::vec(0u8..3, 7),
        b in proptest::collection::vec(0u8..3, 7),
    ) {
        let alpha = assignment(cnf.num_vars, &a);
        let models = brute_models(&cnf);
        match unit_propagate(&cnf, &alpha).unwrap() {
            UpResult::Conflict => {
                prop_assert!(models.iter().all(|&m| !agrees(m, &alpha)));
            }
            UpResult::Closure(c) => {
                // Every derived literal holds in every model extending α.
                prop_assert!(models.iter().filter(|&&m| agrees(m, &alpha)).all(|&m| agrees(m, &c)));
                prop_assert_eq!(unit_propagate(&cnf, &c).unwrap(), UpResult::Closure(c.clone()));
                // Extending α by a compatible β can only grow the closure.
                let beta: Vec<Lit> = assignment(cnf.num_vars, &b)
                    .into_iter()
                    .filter(|l| !c.contains(&!*l))
                    .collect();
                let mut ab = c.clone();
                ab.extend(beta.iter().filter(|l| !c.contains(l)));
                if let UpResult::Closure(c2) = unit_propagate(&cnf, &ab).unwrap() {
                    prop_assert!(c.iter().all(|l| c2.contains(l)));
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_brute_force(cnf in arb_cnf(8, 14), a in proptest::collection::vec(0u8..3, 8)) {
        let oracle = Oracle::new(&cnf).unwrap();
        let models = brute_models(&cnf);
        prop_assert_eq!(oracle.models(1 << 10).unwrap(), models.clone());
        let alpha = assignment(cnf.num_vars, &a);
        let sat = models.iter().any(|&m| agrees(m, &alpha));
        prop_assert_eq!(oracle.satisfiable(&alpha).unwrap(), sat);
        for v in 1..=cnf.num_vars {
            let lit = Var(v).pos();
            let entailed = models.iter().filter(|&&m| agrees(m, &alpha)).all(|&m| agrees(m, &[lit]));
            prop_assert_eq!(oracle.entailed(&alpha, lit).unwrap(), entailed);
        }
    }

    #[test]
    fn tree_sweep_matches_raw_sweep(cnf in arb_cnf(5, 9), pc in any::<bool>()) {
        let property = if pc { Property::Pc } else { Property::Urc };
        let scope: Vec<Var> = cnf.vars().collect();
        let tree = verify_strength(&cnf, &scope, Scope::All, property, &VerifyOptions::default()).unwrap();
        let raw = raw_sweep(&cnf, &scope, property).unwrap();
        match raw {
            None => prop_assert!(tree.holds(), "raw sweep holds, tree sweep: {}", tree),
            Some((alpha, failure)) => {
                prop_assert!(tree.is_counterexample());
                prop_assert_eq!(&tree.witness, &alpha);
                prop_assert_eq!(tree.missed, Some(failure.missed));
                prop_assert!(tree.recheck(&cnf).unwrap());
                let direct = check_assignment(&cnf, &scope, &alpha, property).unwrap();
                prop_assert_eq!(direct.map(|f| f.missed), Some(failure.missed));
            }
        }
    }

    #[test]
    fn pc_implies_urc(cnf in arb_cnf(5, 8)) {
        let scope: Vec<Var> = cnf.vars().collect();
        let opts = VerifyOptions::default();
        let pc = verify_strength(&cnf, &scope, Scope::All, Property::Pc, &opts).unwrap();
        let urc = verify_strength(&cnf, &scope, Scope::All, Property::Urc, &opts).unwrap();
        prop_assert!(!pc.holds() || urc.holds());
    }
}
