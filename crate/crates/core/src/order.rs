//! Monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Degree (weighted by the ring or by the order's own weights), ties broken reverse-lexicographically.
    GrevLex,
    Lex,
    /// Any monomial involving one of the first `eliminate` variables is larger
    /// than every monomial free of them. The prefix is compared by grevlex,
    /// the remaining variables by `inner`.
    Block { eliminate: usize, inner: Box<TermOrder> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    /// Overrides the ring's grading weights for the degree comparison.
    pub weights: Option<Vec<u32>>,
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { kind: OrderKind::GrevLex, weights: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, weights: None }
    }

    pub fn block(eliminate: usize, inner: TermOrder) -> Self {
        TermOrder { kind: OrderKind::Block { eliminate, inner: Box::new(inner) }, weights: None }
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::InvalidArgument("order weights must be positive".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn is_block(&self) -> bool {
        matches!(self.kind, OrderKind::Block { .. })
    }

    /// Compare two monomials; `ring_weights` is used unless the order carries its own.
    pub fn compare(&self, a: &Monomial, b: &Monomial, ring_weights: &[u32]) -> Ordering {
        let w = self.weights.as_deref().unwrap_or(ring_weights);
        self.compare_slices(a.exps(), b.exps(), w)
    }

    fn compare_slices(&self, a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
        match &self.kind {
            OrderKind::GrevLex => grevlex(a, b, w),
            OrderKind::Lex => lex(a, b),
            OrderKind::Block { eliminate, inner } => {
                let k = (*eliminate).min(a.len());
                grevlex(&a[..k], &b[..k], &w[..k]).then_with(|| {
                    let iw = inner.weights.as_deref().unwrap_or(&w[k..]);
                    inner.compare_slices(&a[k..], &b[k..], iw)
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            OrderKind::GrevLex => "grevlex".into(),
            OrderKind::Lex => "lex".into(),
            OrderKind::Block { eliminate, inner } => format!("block({eliminate},{})", inner.name()),
        }
    }
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::grevlex()
    }
}

fn grevlex(a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
    let da: u64 = a.iter().zip(w).map(|(&e, &x)| e as u64 * x as u64).sum();
    let db: u64 = b.iter().zip(w).map(|(&e, &x)| e as u64 * x as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec()).unwrap()
    }

    #[test]
    fn grevlex_prefers_degree_then_reverse_lex() {
        let o = TermOrder::grevlex();
        let w = [1, 1, 1];
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 2, 0]), &w), Ordering::Less);
        // y^2 > x*z
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1, 0]), &m(&[0, 2, 0]), &w), Ordering::Greater);
    }

    #[test]
    fn block_ranks_eliminated_variables_first() {
        let o = TermOrder::block(1, TermOrder::grevlex());
        let w = [1, 1, 1];
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 1, 1]), &m(&[0, 0, 3]), &w), Ordering::Less);
    }

    #[test]
    fn weights_change_degree_comparison() {
        let o = TermOrder::grevlex().with_weights(vec![3, 1]).unwrap();
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 2]), &[1, 1]), Ordering::Greater);
        assert!(TermOrder::grevlex().with_weights(vec![0, 1]).is_err());
    }
}
