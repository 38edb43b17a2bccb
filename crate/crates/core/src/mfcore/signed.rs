//! Signed permutation isomorphisms between factorizations, used to compare
//! constructions that agree up to reordering and re-signing basis vectors.

use rustc_hash::FxHashMap;

use super::{tensor, MFMorphism, MatrixFactorization, PolyMatrix};
use crate::exactalg::Poly;
use crate::Error;

/// Basis vector `i` maps to `sign[i] · e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    /// The permutation matrix with entry `sign[j]` at `(perm[j], j)`.
    pub fn matrix(&self, nvars: usize) -> PolyMatrix {
        let n = self.perm.len();
        let mut m = PolyMatrix::zeros(n, n, nvars);
        for (j, (&p, &s)) in self.perm.iter().zip(&self.sign).enumerate() {
            m.set(p, j, Poly::from_int(nvars, s as i64));
        }
        m
    }
}

/// An isomorphism `A -> B` given by signed permutations of both halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedIso {
    pub odd: SignedPerm,
    pub even: SignedPerm,
}

/// A basis label: a sequence of `(tag, parity, index)` factors.
pub type Label = Vec<(u8, u8, usize)>;

/// Labels of the odd and even bases of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabels {
    pub odd: Vec<Label>,
    pub even: Vec<Label>,
}

impl BasisLabels {
    /// Each basis vector labelled by its own parity and index.
    pub fn leaf(tag: u8, p: &MatrixFactorization) -> Self {
        BasisLabels {
            odd: (0..p.rank1()).map(|i| vec![(tag, 1, i)]).collect(),
            even: (0..p.rank0()).map(|i| vec![(tag, 0, i)]).collect(),
        }
    }

    /// Labels of a tensor product, in the block order used by [`tensor`].
    pub fn tensor(x: &BasisLabels, y: &BasisLabels) -> Self {
        let pairs = |a: &[Label], b: &[Label]| -> Vec<Label> {
            a.iter()
                .flat_map(|u| {
                    b.iter().map(move |v| {
                        let mut l = u.clone();
                        l.extend(v.iter().cloned());
                        l
                    })
                })
                .collect()
        };
        let mut odd = pairs(&x.odd, &y.even);
        odd.extend(pairs(&x.even, &y.odd));
        let mut even = pairs(&x.even, &y.even);
        even.extend(pairs(&x.odd, &y.odd));
        BasisLabels { odd, even }
    }

    /// Labels of a mapping cone from a source with labels `s` to a target
    /// with labels `t`.
    pub fn cone(s: &BasisLabels, t: &BasisLabels) -> Self {
        BasisLabels {
            odd: t.odd.iter().chain(&s.even).cloned().collect(),
            even: t.even.iter().chain(&s.odd).cloned().collect(),
        }
    }
}

fn label_perm(a: &[Label], b: &[Label]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let index: FxHashMap<&Label, usize> = b.iter().enumerate().map(|(k, l)| (l, k)).collect();
    if index.len() != b.len() {
        return None;
    }
    a.iter().map(|l| index.get(l).copied()).collect()
}

impl SignedIso {
    /// Finds signs making the label-matched permutation an isomorphism
    /// `a -> b`, and verifies it entrywise. Signs are propagated along
    /// nonzero entries; each connected block is anchored at `+1`.
    pub fn match_labels(
        a: &MatrixFactorization,
        la: &BasisLabels,
        b: &MatrixFactorization,
        lb: &BasisLabels,
    ) -> Option<SignedIso> {
        if a.f != b.f || a.vars != b.vars {
            return None;
        }
        let p1 = label_perm(&la.odd, &lb.odd)?;
        let p0 = label_perm(&la.even, &lb.even)?;
        let (r1, r0) = (a.rank1(), a.rank0());
        if (r1, r0) != (b.rank1(), b.rank0()) {
            return None;
        }
        // nodes 0..r1 odd, r1..r1+r0 even; edge parity: product of signs
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); r1 + r0];
        let relation = |x: &Poly, y: &Poly| -> Option<i8> {
            if x == y {
                Some(1)
            } else if *x == -y {
                Some(-1)
            } else {
                None
            }
        };
        for (i, j, p) in a.d1.entries() {
            if p.is_zero() {
                continue;
            }
            let s = relation(b.d1.get(p0[i], p1[j]), p)?;
            adj[r1 + i].push((j, s));
            adj[j].push((r1 + i, s));
        }
        for (i, j, p) in a.d0.entries() {
            if p.is_zero() {
                continue;
            }
            let s = relation(b.d0.get(p1[i], p0[j]), p)?;
            adj[i].push((r1 + j, s));
            adj[r1 + j].push((i, s));
        }
        let mut sign: Vec<i8> = vec![0; r1 + r0];
        for start in 0..r1 + r0 {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, s) in &adj[u] {
                    let want = sign[u] * s;
                    if sign[v] == 0 {
                        sign[v] = want;
                        stack.push(v);
                    } else if sign[v] != want {
                        return None;
                    }
                }
            }
        }
        let iso = SignedIso {
            odd: SignedPerm {
                perm: p1,
                sign: sign[..r1].to_vec(),
            },
            even: SignedPerm {
                perm: p0,
                sign: sign[r1..].to_vec(),
            },
        };
        iso.verify(a, b).then_some(iso)
    }

    /// The isomorphism as a morphism `a -> b`.
    pub fn to_morphism(&self, a: &MatrixFactorization, b: &MatrixFactorization) -> MFMorphism {
        let n = a.nvars();
        MFMorphism {
            source: a.clone(),
            target: b.clone(),
            a1: self.odd.matrix(n),
            a0: self.even.matrix(n),
        }
    }

    /// Exact check that `b` is `a` transported along the signed permutation.
    pub fn verify(&self, a: &MatrixFactorization, b: &MatrixFactorization) -> bool {
        // both blocks are invertible, so the cycle condition says
        // b.d = α·a.d·α⁻¹ in each parity
        a.f == b.f && self.to_morphism(a, b).is_cycle()
    }
}

/// Builds `(P⊗Q)⊗R` and `P⊗(Q⊗R)` together with the verified signed
/// permutation between them.
pub fn tensor_associator(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    r: &MatrixFactorization,
) -> Result<(MatrixFactorization, MatrixFactorization, SignedIso), Error> {
    let left = tensor(&tensor(p, q)?, r)?;
    let right = tensor(p, &tensor(q, r)?)?;
    let (lp, lq, lr) = (
        BasisLabels::leaf(0, p),
        BasisLabels::leaf(1, q),
        BasisLabels::leaf(2, r),
    );
    let ll = BasisLabels::tensor(&BasisLabels::tensor(&lp, &lq), &lr);
    let lrt = BasisLabels::tensor(&lp, &BasisLabels::tensor(&lq, &lr));
    let iso = SignedIso::match_labels(&left, &ll, &right, &lrt)
        .ok_or_else(|| Error::Internal("tensor products are not related by a signed permutation".into()))?;
    Ok((left, right, iso))
}
