use super::{Grading, MatrixFactorization, PolyMatrix};
use crate::Error;

/// An even morphism `α = (α1, α0)` with `α1: P1 -> P1'` and `α0: P0 -> P0'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFMorphism {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub a1: PolyMatrix,
    pub a0: PolyMatrix,
}

impl MFMorphism {
    pub fn new(
        source: MatrixFactorization,
        target: MatrixFactorization,
        a1: PolyMatrix,
        a0: PolyMatrix,
    ) -> Result<Self, Error> {
        source.check_compatible(&target)?;
        if (a1.rows(), a1.cols()) != (target.rank1(), source.rank1())
            || (a0.rows(), a0.cols()) != (target.rank0(), source.rank0())
        {
            return Err(Error::DimensionMismatch(format!(
                "morphism blocks {}x{} and {}x{} do not fit ranks ({},{}) -> ({},{})",
                a1.rows(),
                a1.cols(),
                a0.rows(),
                a0.cols(),
                source.rank1(),
                source.rank0(),
                target.rank1(),
                target.rank0()
            )));
        }
        Ok(MFMorphism { source, target, a1, a0 })
    }

    pub fn identity(p: &MatrixFactorization) -> Self {
        let n = p.nvars();
        MFMorphism {
            source: p.clone(),
            target: p.clone(),
            a1: PolyMatrix::identity(p.rank1(), n),
            a0: PolyMatrix::identity(p.rank0(), n),
        }
    }

    pub fn zero(source: &MatrixFactorization, target: &MatrixFactorization) -> Result<Self, Error> {
        let n = source.nvars();
        Self::new(
            source.clone(),
            target.clone(),
            PolyMatrix::zeros(target.rank1(), source.rank1(), n),
            PolyMatrix::zeros(target.rank0(), source.rank0(), n),
        )
    }

    /// Both commuting squares: `α0·d1 = d1'·α1` and `α1·d0 = d0'·α0`.
    pub fn cycle_violation(&self) -> Option<String> {
        let s = &self.source;
        let t = &self.target;
        if self.a0.mul(&s.d1) != t.d1.mul(&self.a1) {
            return Some("a0*d1 != d1'*a1".into());
        }
        if self.a1.mul(&s.d0) != t.d0.mul(&self.a0) {
            return Some("a1*d0 != d0'*a0".into());
        }
        None
    }

    pub fn is_cycle(&self) -> bool {
        self.cycle_violation().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MFMorphism) -> Result<MFMorphism, Error> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-matching morphisms".into()));
        }
        Ok(MFMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            a1: self.a1.mul(&first.a1),
            a0: self.a0.mul(&first.a0),
        })
    }

    pub fn sub(&self, o: &MFMorphism) -> MFMorphism {
        MFMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            a1: self.a1.sub(&o.a1),
            a0: self.a0.sub(&o.a0),
        }
    }

    /// Mapping cone, with odd half `P1' ⊕ P0` and even half `P0' ⊕ P1`:
    /// `d1 = [[d1', α0], [0, -d0]]`, `d0 = [[d0', α1], [0, -d1]]`.
    pub fn cone(&self) -> Result<MatrixFactorization, Error> {
        if let Some(v) = self.cycle_violation() {
            return Err(Error::NotACycle(v));
        }
        let s = &self.source;
        let t = &self.target;
        let n = s.nvars();
        let d1 = PolyMatrix::block2(
            &t.d1,
            &self.a0,
            &PolyMatrix::zeros(s.rank1(), t.rank1(), n),
            &s.d0.neg(),
        );
        let d0 = PolyMatrix::block2(
            &t.d0,
            &self.a1,
            &PolyMatrix::zeros(s.rank0(), t.rank0(), n),
            &s.d1.neg(),
        );
        let grading = match (&s.grading, &t.grading) {
            (Some(a), Some(b)) if a.weights == b.weights => {
                let d = a.weights.degree as i64;
                Some(Grading {
                    weights: a.weights.clone(),
                    deg1: b.deg1.iter().chain(&a.deg0).copied().collect(),
                    deg0: b.deg0.iter().copied().chain(a.deg1.iter().map(|x| x + d)).collect(),
                })
            }
            _ => None,
        };
        Ok(MatrixFactorization {
            mode: s.mode,
            vars: s.vars.clone(),
            f: s.f.clone(),
            d1,
            d0,
            grading,
        }
        .keep_grading_if_consistent())
    }
}
