use crate::algebra::{FieldElem, MultiPoly, PrimeEvaluator};

/// Repeated evaluation returning the value's enumeration index. Prime fields
/// use the flattened residue evaluator.
pub enum FastEval {
    Prime {
        ev: PrimeEvaluator,
        scratch: Vec<u32>,
        point: Vec<u32>,
    },
    Generic(MultiPoly),
}

impl FastEval {
    pub fn new(f: &MultiPoly) -> Self {
        match f.compile_prime() {
            Some(ev) => FastEval::Prime {
                ev,
                scratch: Vec::new(),
                point: Vec::new(),
            },
            None => FastEval::Generic(f.clone()),
        }
    }

    /// Residues, prime fields only.
    pub fn eval_residues(&mut self, pt: &[u32]) -> u32 {
        match self {
            FastEval::Prime { ev, scratch, .. } => ev.eval(pt, scratch),
            FastEval::Generic(_) => panic!("residue evaluation over a tower field"),
        }
    }

    pub fn eval_index(&mut self, pt: &[FieldElem]) -> u128 {
        match self {
            FastEval::Prime { ev, scratch, point } => {
                point.clear();
                point.extend(pt.iter().map(|a| a.coeffs()[0]));
                ev.eval(point, scratch) as u128
            }
            FastEval::Generic(f) => f.field().index_of(&f.eval_unchecked(pt)),
        }
    }
}
