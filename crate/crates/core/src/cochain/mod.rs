//! The controlling graded Lie algebra: cochains `Hom(⊗^{2p+1} g, g)`, the
//! circle product and graded bracket, lifts, bidegrees and the five-way
//! decomposition of a degree-1 structure.
//!
//! A degree-`p` cochain takes `p` pairs `X_i = x_i ⊗ y_i` followed by one
//! final argument. Pairs are stored as consecutive slots of a flat argument
//! tuple, so slot `2i` is `x_{i+1}`, slot `2i+1` is `y_{i+1}` and slot `2p`
//! is the final argument.

mod bracket;
mod split;

pub use bracket::{circle_product, graded_bracket};
pub use split::{
    bidegree_bracket_law, bidegree_of, decompose_theta, homogeneous_parts, lift_component, lift_linear_map, Bidegree,
    BidegreeOutcome, Block, BlockMap, SplitContext, ThetaComponents,
};

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linear::LinearMap;
use crate::scalar::{all_zero, Scalar};
use crate::system::TripleSystem;
use crate::tuples::{decode_into, encode, power};

/// A multilinear map `⊗^{2p+1} K^N → K^N`, stored densely.
///
/// The value on basis tuple `(a_0, …, a_{2p})` is the slice at
/// `encode(a) * N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    dim: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("cochain dimension must be positive".into()));
        }
        Ok(Cochain { dim, degree, coeffs: vec![Scalar::zero(); power(dim, 2 * degree + 2)] })
    }

    pub fn from_fn(dim: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Result<Self> {
        let mut c = Self::zero(dim, degree)?;
        let arity = c.arity();
        let mut idx = vec![0usize; arity];
        for t in 0..c.num_inputs() {
            decode_into(t, dim, &mut idx);
            let v = f(&idx);
            check_dim("cochain value length", dim, v.len())?;
            c.coeffs[t * dim..(t + 1) * dim].clone_from_slice(&v);
        }
        Ok(c)
    }

    /// The degree-1 cochain of a triple system.
    pub fn from_system(t: &TripleSystem) -> Self {
        Cochain { dim: t.dim(), degree: 1, coeffs: t.constants().to_vec() }
    }

    /// Reads a degree-1 cochain back as a triple system.
    pub fn to_system(&self) -> Result<TripleSystem> {
        if self.degree != 1 {
            return Err(Error::Malformed(format!("expected a degree-1 cochain, got degree {}", self.degree)));
        }
        TripleSystem::from_constants(self.dim, self.coeffs.clone())
    }

    /// The degree-0 cochain of an endomorphism.
    pub fn from_linear_map(m: &LinearMap) -> Result<Self> {
        check_dim("endomorphism must be square", m.rows(), m.cols())?;
        Self::from_fn(m.rows(), 0, |idx| m.column(idx[0]).to_vec())
    }

    pub fn to_linear_map(&self) -> Result<LinearMap> {
        if self.degree != 0 {
            return Err(Error::Malformed("expected a degree-0 cochain".into()));
        }
        Ok(LinearMap::from_fn(self.dim, self.dim, |i, j| self.value(&[j])[i].clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        2 * self.degree + 1
    }

    /// Number of basis input tuples, `N^{2p+1}`.
    pub fn num_inputs(&self) -> usize {
        power(self.dim, self.arity())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Value on a basis tuple.
    pub fn value(&self, args: &[usize]) -> &[Scalar] {
        debug_assert_eq!(args.len(), self.arity());
        let t = encode(args, self.dim);
        &self.coeffs[t * self.dim..(t + 1) * self.dim]
    }

    pub fn value_mut(&mut self, args: &[usize]) -> &mut [Scalar] {
        let t = encode(args, self.dim);
        let n = self.dim;
        &mut self.coeffs[t * n..(t + 1) * n]
    }

    /// Value on the basis tuple with flat index `t`.
    pub fn value_at(&self, t: usize) -> &[Scalar] {
        &self.coeffs[t * self.dim..(t + 1) * self.dim]
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>> {
        check_dim("argument count", self.arity(), args.len())?;
        for a in args {
            check_dim("argument length", self.dim, a.len())?;
        }
        let mut out = vec![Scalar::zero(); self.dim];
        let mut idx = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut idx, Scalar::one(), &mut out);
        Ok(out)
    }

    fn eval_rec(&self, args: &[&[Scalar]], idx: &mut Vec<usize>, coef: Scalar, out: &mut [Scalar]) {
        if idx.len() == args.len() {
            for (o, v) in out.iter_mut().zip(self.value(idx)) {
                o.add_product(&coef, v);
            }
            return;
        }
        let slot = idx.len();
        for (i, c) in args[slot].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx.push(i);
            self.eval_rec(args, idx, &coef * c, out);
            idx.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.coeffs)
    }

    fn check_same_shape(&self, other: &Cochain) -> Result<()> {
        check_dim("cochain dimension", self.dim, other.dim)?;
        check_dim("cochain degree", self.degree, other.degree)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_shape(other)?;
        Ok(Cochain {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_shape(other)?;
        Ok(Cochain {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Sum of a non-empty list of same-shape cochains.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Cochain>) -> Result<Cochain> {
        let mut iter = items.into_iter();
        let first = iter.next().ok_or_else(|| Error::Malformed("empty cochain sum".into()))?.clone();
        iter.try_fold(first, |acc, c| acc.add(c))
    }

    /// Nonzero entries as `(argument tuple, value)` in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, Vec<Scalar>)> {
        let mut idx = vec![0usize; self.arity()];
        (0..self.num_inputs())
            .filter(|&t| !all_zero(self.value_at(t)))
            .map(|t| {
                decode_into(t, self.dim, &mut idx);
                (idx.clone(), self.value_at(t).to_vec())
            })
            .collect()
    }

    /// First basis tuple on which the two cochains differ.
    pub fn first_difference(&self, other: &Cochain) -> Result<Option<Vec<usize>>> {
        self.check_same_shape(other)?;
        let mut idx = vec![0usize; self.arity()];
        Ok((0..self.num_inputs()).find(|&t| self.value_at(t) != other.value_at(t)).map(|t| {
            decode_into(t, self.dim, &mut idx);
            idx.clone()
        }))
    }

    /// Replaces argument `slot` by `A(·)`: the result is `P(…, A e_i, …)`.
    pub fn precompose_slot(&self, slot: usize, a: &LinearMap) -> Result<Cochain> {
        check_dim("precomposed map rows", self.dim, a.rows())?;
        check_dim("precomposed map cols", self.dim, a.cols())?;
        let n = self.dim;
        let mut out = Cochain::zero(n, self.degree)?;
        let mut idx = vec![0usize; self.arity()];
        for t in 0..self.num_inputs() {
            decode_into(t, n, &mut idx);
            let i = idx[slot];
            let col = a.column(i);
            let mut acc = vec![Scalar::zero(); n];
            for (j, c) in col.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                idx[slot] = j;
                for (o, v) in acc.iter_mut().zip(self.value(&idx)) {
                    o.add_product(c, v);
                }
            }
            out.coeffs[t * n..(t + 1) * n].clone_from_slice(&acc);
        }
        Ok(out)
    }

    /// `P ∘ (A ⊗ … ⊗ A)`.
    pub fn precompose_all(&self, a: &LinearMap) -> Result<Cochain> {
        (0..self.arity()).try_fold(self.clone(), |acc, slot| acc.precompose_slot(slot, a))
    }

    /// `A ∘ P`.
    pub fn postcompose(&self, a: &LinearMap) -> Result<Cochain> {
        check_dim("postcomposed map rows", self.dim, a.rows())?;
        check_dim("postcomposed map cols", self.dim, a.cols())?;
        let n = self.dim;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for t in 0..self.num_inputs() {
            coeffs.extend(a.apply(self.value_at(t)));
        }
        Ok(Cochain { dim: n, degree: self.degree, coeffs })
    }

    /// Checks the two constraints defining the subspace `C_LTS`: the last pair
    /// is alternating, `P(…, x, x, y) = 0`, and the cyclic sum over the last
    /// three arguments vanishes. Degree-0 cochains satisfy both trivially.
    pub fn lts_constraints(&self) -> LtsConstraintReport {
        if self.degree == 0 {
            return LtsConstraintReport::default();
        }
        let n = self.dim;
        let arity = self.arity();
        let (a, b, c) = (arity - 3, arity - 2, arity - 1);
        let mut idx = vec![0usize; arity];
        let mut alternating = None;
        let mut cyclic = None;
        for t in 0..self.num_inputs() {
            if alternating.is_some() && cyclic.is_some() {
                break;
            }
            decode_into(t, n, &mut idx);
            let (x, y, z) = (idx[a], idx[b], idx[c]);
            let base = self.value_at(t);
            let mut other = idx.clone();
            if alternating.is_none() {
                other[a] = y;
                other[b] = x;
                let swapped = self.value(&other);
                if base.iter().zip(swapped).any(|(p, q)| !(p + q).is_zero()) {
                    alternating = Some(idx.clone());
                }
            }
            if cyclic.is_none() {
                other[a] = y;
                other[b] = z;
                other[c] = x;
                let v1 = self.value(&other).to_vec();
                other[a] = z;
                other[b] = x;
                other[c] = y;
                let v2 = self.value(&other);
                if (0..n).any(|m| !(&(&base[m] + &v1[m]) + &v2[m]).is_zero()) {
                    cyclic = Some(idx.clone());
                }
            }
        }
        LtsConstraintReport { alternating, cyclic }
    }

    pub fn is_lts_cochain(&self) -> bool {
        self.lts_constraints().passed()
    }
}

/// Outcome of [`Cochain::lts_constraints`], with the first failing tuple of each constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LtsConstraintReport {
    pub alternating: Option<Vec<usize>>,
    pub cyclic: Option<Vec<usize>>,
}

impl LtsConstraintReport {
    pub fn passed(&self) -> bool {
        self.alternating.is_none() && self.cyclic.is_none()
    }
}
