mod common;

use common::{instance, project_domain, to_set};
use pcnnf_core::cnf::read_dimacs;
use pcnnf_core::encoder::booleanize;
use pcnnf_core::nnf::{enumerate_models, mdd_expansion_dnnf};
use pcnnf_core::pipeline::{claim_formula, claimed_property, prepare};
use pcnnf_core::propagation::{scope_vars, verify_strength, Oracle, VerifyOptions};
use pcnnf_core::separator::LevelMode;

/// Instances too large for the acceptance set but still within an
/// exhaustive sweep: every encoding between 15 and 24 variables.
#[test]
fn claimed_properties_hold_on_larger_instances() {
    let larger: Vec<_> = (0..200)
        .filter_map(instance)
        .filter(|i| (15..=24).contains(&i.max_vars()))
        .take(12)
        .collect();
    assert_eq!(larger.len(), 12);
    for inst in &larger {
        for enc in &inst.encodings {
            let property = claimed_property(enc.kind);
            let formula = claim_formula(enc);
            let scope = property.natural_scope();
            let vars = scope_vars(&formula, Some(&enc.varmap), scope).unwrap();
            let r = verify_strength(&formula, &vars, scope, property, &VerifyOptions::default()).unwrap();
            assert!(r.holds(), "{} {}: {r}", inst.label(), enc.kind.name());
        }
    }
}

#[test]
fn dimacs_round_trip_preserves_formula_and_labels() {
    for inst in (0..30).filter_map(instance) {
        for enc in &inst.encodings {
            let doc = read_dimacs(&enc.to_dimacs()).unwrap();
            assert_eq!(doc.cnf, enc.to_cnf(), "{}", inst.label());
            assert_eq!(doc.map, enc.varmap, "{}", inst.label());
        }
    }
}

#[test]
fn mdd_encodings_are_sound_under_every_level_mode() {
    for seed in 0..6u64 {
        let dnnf = mdd_expansion_dnnf(seed, 3, 2 + (seed % 2) as usize, 2).unwrap();
        let expected = to_set(enumerate_models(&dnnf).unwrap());
        for mode in [LevelMode::Strict, LevelMode::MaxDepth, LevelMode::MinPull] {
            let p = prepare(&dnnf, mode).unwrap();
            assert_eq!(p.cover.added_noops, 0, "strictly leveled input needs no subdivision");
            for enc in pcnnf_core::encoder::EncodingKind::ALL.map(|k| p.encode(k).unwrap()) {
                let formula = claim_formula(&enc);
                let models = Oracle::new(&formula).unwrap().models(1 << 16).unwrap();
                let projected = to_set(models.iter().map(|&m| {
                    let bits: Vec<bool> = (0..formula.num_vars).map(|i| m >> i & 1 == 1).collect();
                    project_domain(&enc, &bits).expect("d-consistent")
                }));
                assert_eq!(projected, expected, "seed {seed} {mode} {}", enc.kind.name());
                if dnnf.domains().iter().all(|d| d.size() == 2) {
                    assert!(booleanize(&enc).is_ok());
                }
            }
        }
    }
}

/// Swapping the pairwise at-most-one for the ladder keeps URC, and the
/// pairwise exactly-one for the chain keeps PC, over 50 instances with
/// `n·d ≤ 12`.
#[test]
fn compact_separator_encodings_keep_their_strength() {
    use pcnnf_core::encoder::EncodingKind;
    use pcnnf_core::error::LabError;
    use pcnnf_core::propagation::{Property, Scope};

    let opts = VerifyOptions {
        budget: 2_000_000,
        ..VerifyOptions::default()
    };
    let (mut done, mut too_big) = (0, 0);
    for inst in (0..400).filter_map(instance) {
        if done == 50 {
            break;
        }
        assert!(inst.n * inst.d <= 12);
        let mut finished = true;
        for (kind, property) in [
            (EncodingKind::PsiCCompact, Property::Urc),
            (EncodingKind::PsiPCompact, Property::Pc),
        ] {
            let enc = inst.prepared.encode(kind).unwrap();
            let cnf = enc.to_cnf();
            let vars = scope_vars(&cnf, None, Scope::All).unwrap();
            match verify_strength(&cnf, &vars, Scope::All, property, &opts) {
                Ok(r) => assert!(r.holds(), "{} {}: {r}", inst.label(), kind.name()),
                Err(LabError::BudgetExceeded { .. } | LabError::OracleCap { .. }) => finished = false,
                Err(e) => panic!("{}: {e}", inst.label()),
            }
        }
        if finished {
            done += 1;
        } else {
            too_big += 1;
        }
    }
    assert_eq!(done, 50, "{too_big} instances exceeded the budget");
}
