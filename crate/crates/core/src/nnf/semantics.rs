use super::{Dnnf, NodeKind};
use crate::error::DnnfError;

/// Largest assignment space `enumerate_models` walks by default.
pub const DEFAULT_MODEL_CAP: u128 = 1 << 20;

impl Dnnf {
    /// Checks that `assignment` gives every variable one in-range value index.
    pub fn check_assignment(&self, assignment: &[usize]) -> Result<(), DnnfError> {
        if assignment.len() != self.num_vars() {
            return Err(DnnfError::AssignmentLength {
                expected: self.num_vars(),
                found: assignment.len(),
            });
        }
        for (d, &value) in self.domains().iter().zip(assignment) {
            if value >= d.size() {
                return Err(DnnfError::AssignmentValue {
                    var: d.name.clone(),
                    value,
                });
            }
        }
        Ok(())
    }

    /// Truth value of every node under a total assignment (value index per
    /// variable). Constants evaluate as the empty conjunction/disjunction.
    pub fn node_values(&self, assignment: &[usize]) -> Result<Vec<bool>, DnnfError> {
        self.check_assignment(assignment)?;
        Ok(self.node_values_unchecked(assignment))
    }

    pub(crate) fn node_values_unchecked(&self, assignment: &[usize]) -> Vec<bool> {
        let mut val = vec![false; self.len()];
        for (v, node) in self.nodes().iter().enumerate() {
            val[v] = match &node.kind {
                NodeKind::Leaf(dv) => assignment[dv.var] == dv.value,
                NodeKind::And(c) => c.iter().all(|&u| val[u]),
                NodeKind::Or(c) => c.iter().any(|&u| val[u]),
            };
        }
        val
    }

    /// `f_D` on a total, d-consistent assignment.
    pub fn evaluate(&self, assignment: &[usize]) -> Result<bool, DnnfError> {
        Ok(self.node_values(assignment)?[self.root()])
    }

    /// Number of total assignments, saturating.
    pub fn assignment_space(&self) -> u128 {
        self.domains()
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.size() as u128))
    }
}

/// All satisfying assignments, in lexicographic order (first variable most
/// significant, values in domain order).
pub fn enumerate_models(dnnf: &Dnnf) -> Result<Vec<Vec<usize>>, DnnfError> {
    enumerate_models_capped(dnnf, DEFAULT_MODEL_CAP)
}

pub fn enumerate_models_capped(dnnf: &Dnnf, cap: u128) -> Result<Vec<Vec<usize>>, DnnfError> {
    let size = dnnf.assignment_space();
    if size > cap {
        return Err(DnnfError::CapExceeded { size, cap });
    }
    let sizes: Vec<usize> = dnnf.domains().iter().map(|d| d.size()).collect();
    let mut models = Vec::new();
    let mut a = vec![0usize; sizes.len()];
    loop {
        if dnnf.node_values_unchecked(&a)[dnnf.root()] {
            models.push(a.clone());
        }
        // Odometer increment, last variable fastest.
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return Ok(models);
            }
            i -= 1;
            a[i] += 1;
            if a[i] < sizes[i] {
                break;
            }
            a[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nnf::parse_dnnf;
    use crate::nnf::tests::fig1;

    #[test]
    fn fig1_hand_evaluations() {
        let d = fig1();
        assert!(d.evaluate(&[1, 1, 1, 1]).unwrap());
        assert!(!d.evaluate(&[1, 0, 1, 1]).unwrap());
        assert!(d.evaluate(&[1, 0, 1, 0]).unwrap());
    }

    #[test]
    fn fig1_has_eight_models() {
        let d = fig1();
        let models = enumerate_models(&d).unwrap();
        // Brute force against the closed form (x1=x2 ∧ x3=x4) ∨ (x1≠x2 ∧ x3≠x4).
        let mut expected = Vec::new();
        for bits in 0..16usize {
            let a: Vec<usize> = (0..4).map(|i| (bits >> (3 - i)) & 1).collect();
            if (a[0] == a[1]) == (a[2] == a[3]) {
                expected.push(a);
            }
        }
        assert_eq!(models, expected);
        assert_eq!(models.len(), 8);
    }

    #[test]
    fn single_leaf() {
        let d = parse_dnnf("domain x1 0 1\nleaf n1 x1=0; root n1").unwrap();
        assert!(d.evaluate(&[0]).unwrap());
        assert!(!d.evaluate(&[1]).unwrap());
        assert_eq!(enumerate_models(&d).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn contradiction_has_no_models() {
        let d = parse_dnnf("domain x 0 1\nleaf p x=0\nleaf q x=1\nor g1 p\nor g2 q\nand a g1 g2\nroot a\n").unwrap();
        assert!(enumerate_models(&d).unwrap().is_empty());
    }

    #[test]
    fn bad_assignments_are_rejected() {
        let d = fig1();
        assert!(matches!(
            d.evaluate(&[0, 0]),
            Err(DnnfError::AssignmentLength { expected: 4, found: 2 })
        ));
        assert!(matches!(
            d.evaluate(&[0, 0, 2, 0]),
            Err(DnnfError::AssignmentValue { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let d = fig1();
        assert_eq!(
            enumerate_models_capped(&d, 8),
            Err(DnnfError::CapExceeded { size: 16, cap: 8 })
        );
    }
}
