use alloc::vec::Vec;
use core::fmt;

use crate::error::ReductionError;

/// A possibly negated Boolean variable (0-indexed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// From a signed 1-based DIMACS literal; `0` has no literal.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        match lit {
            0 => None,
            l if l > 0 => Some(Literal::positive((l - 1) as usize)),
            l => Some(Literal::negative((l.unsigned_abs() - 1) as usize)),
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn is_satisfied_by(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Exactly three literals over three distinct variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }

    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        self.0.iter().any(|l| l.is_satisfied_by(x[l.var]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    n: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new<C>(n: usize, clauses: impl IntoIterator<Item = C>) -> Result<Self, ReductionError>
    where
        C: AsRef<[Literal]>,
    {
        let mut out = Vec::new();
        for (i, c) in clauses.into_iter().enumerate() {
            let lits = c.as_ref();
            if lits.len() != 3 {
                return Err(ReductionError::ClauseArity { clause: i, arity: lits.len() });
            }
            for (j, l) in lits.iter().enumerate() {
                if l.var >= n {
                    return Err(ReductionError::LiteralOutOfRange { clause: i, var: l.var, n });
                }
                if lits[..j].iter().any(|p| p.var == l.var) {
                    return Err(ReductionError::RepeatedVariable { clause: i, var: l.var });
                }
            }
            out.push(Clause([lits[0], lits[1], lits[2]]));
        }
        Ok(CnfFormula { n, clauses: out })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(x))
    }
}
