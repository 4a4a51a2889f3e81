//! Preparation of the uniform target superposition and the reflection oracle.
//!
//! Stage `m` rotates qubit `m − 1` (0-based) conditioned on the leading
//! `m − 1` qubits holding a prefix `α`. The rotation sends `|0⟩` to
//! `√p(0|α)|0⟩ + √p(1|α)|1⟩`, so after stage `m` the register holds
//! `Σ_α √p_m(α) |α⟩|0…0⟩`, and after the last stage it holds `|S⟩`.

use num_complex::Complex64;

use crate::circuit::{mat2, Circuit, Control, Gate};
use crate::dichotomy::PrefixTable;
use crate::error::{Error, Result};
use crate::targets::{qubit_bit, TargetSet};

/// Gates of stage `m` (1-based): a single rotation for `m = 1`, otherwise
/// one controlled rotation per nonempty prefix of length `m − 1` whose branch
/// is not forced to `0`. Gates appear in ascending prefix order. A stage that
/// applies one block under every prefix collapses to that block, uncontrolled.
pub fn build_stage(table: &PrefixTable, m: usize) -> Result<Circuit> {
    let n = table.n();
    if m == 0 || m > n {
        return Err(Error::OutOfRange {
            what: "stage",
            value: m as u64,
            allowed: format!("1..={n}"),
        });
    }
    let depth = m - 1;
    let target = m - 1;
    let mut stage = Circuit::new(n);
    for alpha in table.support(depth) {
        let (p0, p1) = table.branch_probs(depth, alpha)?;
        if p1 == 0.0 {
            continue;
        }
        let v = mat2::ry_from_probs(p0, p1)?;
        let controls = (0..depth)
            .map(|q| Control {
                qubit: q,
                bit: qubit_bit(alpha, depth, q),
            })
            .collect();
        stage.push_unchecked(Gate::controlled(controls, target, v));
    }
    if depth > 0 && stage.len() == 1 << depth {
        if let Some(u) = common_block(&stage) {
            let mut single = Circuit::new(n);
            single.push_unchecked(Gate::single(target, u));
            return Ok(single);
        }
    }
    Ok(stage)
}

fn common_block(stage: &Circuit) -> Option<mat2::Mat2> {
    let block = |g: &Gate| match g {
        Gate::Controlled { u, .. } | Gate::Single { u, .. } => Some(*u),
        Gate::PatternPhase { .. } => None,
    };
    let first = block(&stage.gates()[0])?;
    stage
        .gates()
        .iter()
        .all(|g| block(g).is_some_and(|u| mat2::max_abs_diff(&u, &first) == 0.0))
        .then_some(first)
}

/// Each stage of `U(S)` as its own circuit, stage 1 first.
pub fn build_stages(targets: &TargetSet) -> Result<Vec<Circuit>> {
    let table = PrefixTable::build(targets);
    (1..=targets.n()).map(|m| build_stage(&table, m)).collect()
}

/// `U(S)` with `U(S)|0…0⟩ = |S⟩`.
pub fn build_u(targets: &TargetSet) -> Result<Circuit> {
    let mut u = Circuit::new(targets.n());
    for stage in build_stages(targets)? {
        u.append(&stage)?;
    }
    Ok(u)
}

/// The reflection `1 − 2|0…0⟩⟨0…0|`.
pub fn build_p(n: usize) -> Circuit {
    let mut p = Circuit::new(n);
    p.push_unchecked(Gate::PatternPhase {
        pattern: 0,
        phase: Complex64::new(-1.0, 0.0),
    });
    p
}

/// `O = U P U†` for a given preparation `U`, as the gate list `U†`, `P`, `U`.
pub fn reflection_about(prep: &Circuit) -> Result<Circuit> {
    let mut o = prep.dagger();
    o.append(&build_p(prep.n()))?;
    o.append(prep)?;
    Ok(o)
}

/// `O(S) = 1 − 2|S⟩⟨S|`.
pub fn build_oracle_o(targets: &TargetSet) -> Result<Circuit> {
    reflection_about(&build_u(targets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::dense::{unitary_of, DenseMatrix};
    use crate::circuit::StateVector;

    fn example() -> TargetSet {
        TargetSet::from_bitstrings(3, &["000", "001", "010", "100"]).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn example_stages() {
        let table = PrefixTable::build(&example());
        let s1 = build_stage(&table, 1).unwrap();
        let s3 = 3f64.sqrt();
        assert_eq!(s1.len(), 1);
        let Gate::Single { target: 0, u } = &s1.gates()[0] else {
            panic!("{s1:?}")
        };
        let v1 = [[c(s3 / 2.0), c(-0.5)], [c(0.5), c(s3 / 2.0)]];
        assert!(mat2::max_abs_diff(u, &v1) < 1e-12);

        let s2 = build_stage(&table, 2).unwrap();
        assert_eq!(s2.len(), 1);
        let Gate::Controlled { controls, target: 1, u } = &s2.gates()[0] else {
            panic!("{s2:?}")
        };
        assert_eq!(controls, &vec![Control::off(0)]);
        let v2 = [[c((2.0f64 / 3.0).sqrt()), c(-(1.0f64 / 3.0).sqrt())], [c((1.0f64 / 3.0).sqrt()), c((2.0f64 / 3.0).sqrt())]];
        assert!(mat2::max_abs_diff(u, &v2) < 1e-12);

        let s3g = build_stage(&table, 3).unwrap();
        assert_eq!(s3g.len(), 1);
        let Gate::Controlled { controls, target: 2, u } = &s3g.gates()[0] else {
            panic!("{s3g:?}")
        };
        assert_eq!(controls, &vec![Control::off(0), Control::off(1)]);
        assert!(mat2::max_abs_diff(u, &mat2::ry_from_probs(0.5, 0.5).unwrap()) < 1e-12);

        assert!(build_stage(&table, 0).is_err());
        assert!(build_stage(&table, 4).is_err());
    }

    #[test]
    fn full_set_is_a_layer_of_v() {
        let s = TargetSet::full(4).unwrap();
        let u = build_u(&s).unwrap();
        let v = mat2::ry_from_probs(0.5, 0.5).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.gates().iter().all(|g| g.control_count(4) == 0));
        let mut state = StateVector::zero(4).unwrap();
        u.apply_to(&mut state).unwrap();
        assert!(state.max_abs_diff(&StateVector::uniform(4).unwrap()) < 1e-12);
        let mut layer = Circuit::new(4);
        for q in 0..4 {
            layer.push(Gate::single(q, v)).unwrap();
        }
        assert!(unitary_of(&u).unwrap().max_abs_diff(&unitary_of(&layer).unwrap()) < 1e-12);
    }

    #[test]
    fn oracle_matches_reflection() {
        let s = example();
        let o = unitary_of(&build_oracle_o(&s).unwrap()).unwrap();
        let want = DenseMatrix::reflection(8, s.labels(), true);
        assert!(o.max_abs_diff(&want) < 1e-10);
        assert!(o.mul(&o).max_abs_diff(&DenseMatrix::identity(8)) < 1e-10);
    }

    #[test]
    fn singleton_oracle_is_a_sign_flip() {
        let s = TargetSet::new(3, [5]).unwrap();
        let u = build_u(&s).unwrap();
        assert!(u.len() <= 3);
        let o = unitary_of(&build_oracle_o(&s).unwrap()).unwrap();
        let want = DenseMatrix::reflection(8, &[5], false);
        assert!(o.max_abs_diff(&want) < 1e-12);
    }
}
