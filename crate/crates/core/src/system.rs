//! Lie triple systems given by structure constants, their representations,
//! and the elementary constructions on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linear::LinearMap;
use crate::scalar::{all_zero, Scalar};
use crate::tuples::{decode, power};

/// A trilinear bracket on `K^n` given on a basis.
///
/// Storage is dense and total: the coefficient of `e_m` in `[e_i, e_j, e_k]`
/// lives at `((i*n + j)*n + k)*n + m`. Nothing about the axioms is enforced
/// by the storage; see [`TripleSystem::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    dim: usize,
    constants: Vec<Scalar>,
}

impl TripleSystem {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        Ok(TripleSystem { dim, constants: vec![Scalar::zero(); power(dim, 4)] })
    }

    pub fn from_constants(dim: usize, constants: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        check_dim("structure constant count", power(dim, 4), constants.len())?;
        Ok(TripleSystem { dim, constants })
    }

    /// Builds a system from the brackets of basis triples.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Vec<Scalar>) -> Result<Self> {
        let mut t = Self::zero(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = f(i, j, k);
                    check_dim("bracket value length", dim, v.len())?;
                    t.set(i, j, k, &v);
                }
            }
        }
        Ok(t)
    }

    /// Builds a system from sparse entries `[e_i,e_j,e_k] = Σ c_m e_m`.
    /// Unlisted triples are zero; repeated triples accumulate.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 3], Vec<(usize, Scalar)>)>,
    {
        let mut t = Self::zero(dim)?;
        for ([i, j, k], value) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::Malformed(format!("basis index {idx} out of range 0..{dim}")));
                }
            }
            for (m, c) in value {
                if m >= dim {
                    return Err(Error::Malformed(format!("basis index {m} out of range 0..{dim}")));
                }
                let off = t.offset(i, j, k) + m;
                t.constants[off] += c;
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim
    }

    /// `[e_i, e_j, e_k]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let off = self.offset(i, j, k);
        &self.constants[off..off + self.dim]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: &[Scalar]) {
        let off = self.offset(i, j, k);
        self.constants[off..off + self.dim].clone_from_slice(value);
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.constants)
    }

    /// Trilinear extension of the bracket to arbitrary vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let coef = &xy * zk;
                    for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j, k)) {
                        o.add_product(&coef, c);
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j, v]` for an arbitrary vector `v`.
    fn bracket_into_third(&self, i: usize, j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, vk) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j, k)) {
                o.add_product(vk, c);
            }
        }
        out
    }

    /// The induced bracket on a sub-block of the basis, for blocks that are
    /// closed under the bracket. Components outside the block are dropped.
    pub fn restrict(&self, indices: &[usize]) -> Result<TripleSystem> {
        TripleSystem::from_fn(indices.len(), |a, b, c| {
            let v = self.bracket_basis(indices[a], indices[b], indices[c]);
            indices.iter().map(|&m| v[m].clone()).collect()
        })
    }

    /// Exhaustive check of the three axioms over all basis tuples.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let antisymmetry = (0..power(n, 3)).into_par_iter().find_first(|&t| {
            let [i, j, k] = decode::<3>(t, n);
            self.bracket_basis(i, j, k).iter().zip(self.bracket_basis(j, i, k)).any(|(a, b)| !(a + b).is_zero())
        });
        let cyclic = (0..power(n, 3)).into_par_iter().find_first(|&t| {
            let [i, j, k] = decode::<3>(t, n);
            (0..n).any(|m| {
                let s =
                    &self.bracket_basis(i, j, k)[m] + &self.bracket_basis(j, k, i)[m] + &self.bracket_basis(k, i, j)[m];
                !s.is_zero()
            })
        });
        let fundamental =
            (0..power(n, 5)).into_par_iter().find_first(|&t| !self.fundamental_identity_holds(decode::<5>(t, n)));
        AxiomReport {
            checks: vec![
                AxiomCheck {
                    axiom: Axiom::Antisymmetry,
                    counterexample: antisymmetry.map(|t| decode::<3>(t, n).to_vec()),
                },
                AxiomCheck { axiom: Axiom::Cyclic, counterexample: cyclic.map(|t| decode::<3>(t, n).to_vec()) },
                AxiomCheck {
                    axiom: Axiom::Fundamental,
                    counterexample: fundamental.map(|t| decode::<5>(t, n).to_vec()),
                },
            ],
        }
    }

    /// `[x,y,[z,w,t]] = [[x,y,z],w,t] + [z,[x,y,w],t] + [z,w,[x,y,t]]` on basis vectors.
    fn fundamental_identity_holds(&self, [x, y, z, w, t]: [usize; 5]) -> bool {
        let n = self.dim;
        let mut residual = self.bracket_into_third(x, y, self.bracket_basis(z, w, t));
        let mut sub = |coeffs: &[Scalar], slot: usize| {
            for (m, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let v = match slot {
                    0 => self.bracket_basis(m, w, t),
                    1 => self.bracket_basis(z, m, t),
                    _ => self.bracket_basis(z, w, m),
                };
                for (r, vi) in residual.iter_mut().zip(v) {
                    if !vi.is_zero() {
                        *r -= c * vi;
                    }
                }
            }
        };
        sub(self.bracket_basis(x, y, z), 0);
        sub(self.bracket_basis(x, y, w), 1);
        sub(self.bracket_basis(x, y, t), 2);
        debug_assert_eq!(residual.len(), n);
        all_zero(&residual)
    }

    /// The Leibniz bracket on fundamental objects `⊗²g`, with a report on
    /// the Leibniz identity over all basis triples.
    pub fn fundamental_leibniz_bracket(&self) -> LeibnizBracket {
        let n = self.dim;
        let nn = n * n;
        let mut constants = vec![Scalar::zero(); power(nn, 3)];
        // [a⊗b, c⊗d] = [a,b,c]⊗d + c⊗[a,b,d]
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let off = ((a * n + b) * nn + (c * n + d)) * nn;
                        for (m, coef) in self.bracket_basis(a, b, c).iter().enumerate() {
                            constants[off + m * n + d] += coef;
                        }
                        for (m, coef) in self.bracket_basis(a, b, d).iter().enumerate() {
                            constants[off + c * n + m] += coef;
                        }
                    }
                }
            }
        }
        let mut bracket = LeibnizBracket { dim: nn, constants, leibniz_counterexample: None };
        bracket.leibniz_counterexample = bracket.find_leibniz_failure();
        bracket
    }

    /// Lifts a Lie algebra to the triple system `[x,y,z] = [[x,y],z]`.
    pub fn from_lie_algebra(lie: &LieAlgebra) -> Result<TripleSystem> {
        lie.validate()?;
        let n = lie.dim;
        TripleSystem::from_fn(n, |i, j, k| {
            let mut out = vec![Scalar::zero(); n];
            for (m, c) in lie.bracket_basis(i, j).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(lie.bracket_basis(m, k)) {
                    o.add_product(c, v);
                }
            }
            out
        })
    }

    /// The adjoint representation `R(x,y)z = [z,x,y]` of the system on itself.
    pub fn adjoint_representation(&self) -> Representation {
        let n = self.dim;
        Representation::from_fn(n, n, |i, j, c| self.bracket_basis(c, i, j).to_vec())
            .expect("adjoint dimensions are consistent")
    }

    /// Left multiplication `L(x,y)z = [x,y,z]` as a matrix.
    pub fn left_multiplication(&self, i: usize, j: usize) -> LinearMap {
        let n = self.dim;
        LinearMap::from_fn(n, n, |r, c| self.bracket_basis(i, j, c)[r].clone())
    }

    /// The semidirect product on `g ⊕ V`:
    /// `[x+u, y+v, z+w] = [x,y,z] + D(x,y)w + ρ(y,z)u − ρ(x,z)v`.
    ///
    /// The representation is not required to be valid; the output satisfies
    /// the axioms exactly when it is.
    pub fn semidirect_product(&self, rep: &Representation) -> Result<TripleSystem> {
        check_dim("representation base dimension", self.dim, rep.base_dim())?;
        let n = self.dim;
        let m = rep.carrier_dim();
        TripleSystem::from_fn(n + m, |a, b, c| {
            let mut out = vec![Scalar::zero(); n + m];
            match (a < n, b < n, c < n) {
                (true, true, true) => out[..n].clone_from_slice(self.bracket_basis(a, b, c)),
                (true, true, false) => out[n..].clone_from_slice(&rep.d_act(a, b, c - n)),
                (false, true, true) => out[n..].clone_from_slice(rep.act(b, c, a - n)),
                (true, false, true) => {
                    for (o, v) in out[n..].iter_mut().zip(rep.act(a, c, b - n)) {
                        *o = -v;
                    }
                }
                _ => {}
            }
            out
        })
    }
}

/// The three defining identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `[x,x,y] = 0`
    Antisymmetry,
    /// `[x,y,z] + [y,z,x] + [z,x,y] = 0`
    Cyclic,
    /// The five-variable derivation identity.
    Fundamental,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Cyclic => "cyclic identity",
            Axiom::Fundamental => "fundamental identity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// Lexicographically first failing basis tuple, if any.
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.counterexample.is_some())
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.checks.iter().find(|c| c.axiom == axiom).is_some_and(|c| c.counterexample.is_none())
    }
}

/// Bilinear bracket on `⊗²g` with basis `e_i⊗e_j ↦ i*n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizBracket {
    dim: usize,
    constants: Vec<Scalar>,
    leibniz_counterexample: Option<[usize; 3]>,
}

impl LeibnizBracket {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Scalar] {
        let off = (a * self.dim + b) * self.dim;
        &self.constants[off..off + self.dim]
    }

    /// First basis triple violating `[X,[Y,Z]] = [[X,Y],Z] + [Y,[X,Z]]`.
    pub fn leibniz_counterexample(&self) -> Option<[usize; 3]> {
        self.leibniz_counterexample
    }

    pub fn satisfies_leibniz(&self) -> bool {
        self.leibniz_counterexample.is_none()
    }

    fn bracket_vec_basis(&self, v: &[Scalar], b: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, x) in out.iter_mut().zip(self.bracket_basis(a, b)) {
                o.add_product(c, x);
            }
        }
        out
    }

    fn bracket_basis_vec(&self, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (b, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, x) in out.iter_mut().zip(self.bracket_basis(a, b)) {
                o.add_product(c, x);
            }
        }
        out
    }

    fn find_leibniz_failure(&self) -> Option<[usize; 3]> {
        let d = self.dim;
        (0..power(d, 3))
            .into_par_iter()
            .find_first(|&t| {
                let [x, y, z] = decode::<3>(t, d);
                let lhs = self.bracket_basis_vec(x, self.bracket_basis(y, z));
                let r1 = self.bracket_vec_basis(self.bracket_basis(x, y), z);
                let r2 = self.bracket_basis_vec(y, self.bracket_basis(x, z));
                lhs.iter().zip(&r1).zip(&r2).any(|((l, a), b)| &(a + b) != l)
            })
            .map(|t| decode::<3>(t, d))
    }
}

/// A bilinear bracket `[e_i, e_j] = Σ c_m e_m`, used as input to
/// [`TripleSystem::from_lie_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 2], Vec<(usize, Scalar)>)>,
    {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        let mut constants = vec![Scalar::zero(); power(dim, 3)];
        for ([i, j], value) in entries {
            for (m, c) in value {
                if i >= dim || j >= dim || m >= dim {
                    return Err(Error::Malformed("basis index out of range".into()));
                }
                constants[(i * dim + j) * dim + m] += c;
            }
        }
        Ok(LieAlgebra { dim, constants })
    }

    /// Like [`from_entries`](Self::from_entries) but fills in `[e_j,e_i] = −[e_i,e_j]`.
    pub fn from_antisymmetric_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 2], Vec<(usize, Scalar)>)>,
    {
        let mut full = Vec::new();
        for ([i, j], value) in entries {
            let neg = value.iter().map(|(m, c)| (*m, -c)).collect();
            full.push(([i, j], value));
            full.push(([j, i], neg));
        }
        Self::from_entries(dim, full)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let off = (i * self.dim + j) * self.dim;
        &self.constants[off..off + self.dim]
    }

    fn bracket_basis_vec(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, x) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                o.add_product(c, x);
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on basis elements.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket_basis(i, j);
                let ji = self.bracket_basis(j, i);
                if ij.iter().zip(ji).any(|(a, b)| !(a + b).is_zero()) {
                    return Err(Error::InvalidLieAlgebra { reason: "antisymmetry fails", tuple: vec![i, j] });
                }
            }
        }
        for t in 0..power(n, 3) {
            let [i, j, k] = decode::<3>(t, n);
            let a = self.bracket_basis_vec(i, self.bracket_basis(j, k));
            let b = self.bracket_basis_vec(j, self.bracket_basis(k, i));
            let c = self.bracket_basis_vec(k, self.bracket_basis(i, j));
            if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                return Err(Error::InvalidLieAlgebra { reason: "Jacobi identity fails", tuple: vec![i, j, k] });
            }
        }
        Ok(())
    }
}

/// A bilinear action `ρ: ⊗²g → gl(V)`.
///
/// `ρ(e_i,e_j) f_c = Σ_r a_r f_r` with the coefficients stored contiguously
/// at `((i*n + j)*m + c)*m`. The skew part `D(x,y) = ρ(y,x) − ρ(x,y)` is always
/// computed from `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    base_dim: usize,
    carrier_dim: usize,
    data: Vec<Scalar>,
}

impl Representation {
    pub fn zero(base_dim: usize, carrier_dim: usize) -> Result<Self> {
        if base_dim == 0 || carrier_dim == 0 {
            return Err(Error::Malformed("dimensions must be positive".into()));
        }
        Ok(Representation {
            base_dim,
            carrier_dim,
            data: vec![Scalar::zero(); base_dim * base_dim * carrier_dim * carrier_dim],
        })
    }

    /// `f(i, j, c)` returns `ρ(e_i,e_j) f_c`.
    pub fn from_fn(
        base_dim: usize,
        carrier_dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let mut r = Self::zero(base_dim, carrier_dim)?;
        for i in 0..base_dim {
            for j in 0..base_dim {
                for c in 0..carrier_dim {
                    let v = f(i, j, c);
                    check_dim("representation value length", carrier_dim, v.len())?;
                    let off = r.offset(i, j, c);
                    r.data[off..off + carrier_dim].clone_from_slice(&v);
                }
            }
        }
        Ok(r)
    }

    /// Builds `ρ` from one matrix per basis pair (column convention).
    pub fn from_matrices(
        base_dim: usize,
        carrier_dim: usize,
        mut f: impl FnMut(usize, usize) -> LinearMap,
    ) -> Result<Self> {
        let mut mats = Vec::with_capacity(base_dim * base_dim);
        for i in 0..base_dim {
            for j in 0..base_dim {
                let m = f(i, j);
                check_dim("representation matrix rows", carrier_dim, m.rows())?;
                check_dim("representation matrix cols", carrier_dim, m.cols())?;
                mats.push(m);
            }
        }
        Self::from_fn(base_dim, carrier_dim, |i, j, c| mats[i * base_dim + j].column(c).to_vec())
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    fn offset(&self, i: usize, j: usize, c: usize) -> usize {
        ((i * self.base_dim + j) * self.carrier_dim + c) * self.carrier_dim
    }

    /// `ρ(e_i, e_j) f_c`.
    pub fn act(&self, i: usize, j: usize, c: usize) -> &[Scalar] {
        let off = self.offset(i, j, c);
        &self.data[off..off + self.carrier_dim]
    }

    pub fn act_mut(&mut self, i: usize, j: usize, c: usize) -> &mut [Scalar] {
        let off = self.offset(i, j, c);
        let m = self.carrier_dim;
        &mut self.data[off..off + m]
    }

    /// `D(e_i, e_j) f_c = ρ(e_j,e_i) f_c − ρ(e_i,e_j) f_c`.
    pub fn d_act(&self, i: usize, j: usize, c: usize) -> Vec<Scalar> {
        self.act(j, i, c).iter().zip(self.act(i, j, c)).map(|(a, b)| a - b).collect()
    }

    pub fn matrix(&self, i: usize, j: usize) -> LinearMap {
        let m = self.carrier_dim;
        LinearMap::from_fn(m, m, |r, c| self.act(i, j, c)[r].clone())
    }

    pub fn d_matrix(&self, i: usize, j: usize) -> LinearMap {
        let m = self.carrier_dim;
        LinearMap::from_fn(m, m, |r, c| self.act(j, i, c)[r].clone() - self.act(i, j, c)[r].clone())
    }

    /// `ρ(x, y) v` for arbitrary vectors.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.carrier_dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi * yj;
                for (c, vc) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let coef = &xy * vc;
                    for (o, a) in out.iter_mut().zip(self.act(i, j, c)) {
                        o.add_product(&coef, a);
                    }
                }
            }
        }
        out
    }

    /// `D(x, y) v` for arbitrary vectors.
    pub fn apply_d(&self, x: &[Scalar], y: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let a = self.apply(y, x, v);
        let b = self.apply(x, y, v);
        a.iter().zip(&b).map(|(p, q)| p - q).collect()
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.data)
    }

    /// Checks both representation identities over all basis 4-tuples of `g`
    /// acting on every basis vector of `V`:
    ///
    /// 1. `ρ(z,w)ρ(x,y) − ρ(y,w)ρ(x,z) − ρ(x,[y,z,w]) + D(y,z)ρ(x,w) = 0`
    /// 2. `ρ([x,y,z],w) + ρ(z,[x,y,w]) = [D(x,y), ρ(z,w)]`
    ///
    /// Counterexamples are reported as `(x, y, z, w, c)` with `c` the basis
    /// vector of `V` on which the identity fails.
    pub fn check(&self, t: &TripleSystem) -> Result<RepresentationReport> {
        check_dim("representation base dimension", t.dim(), self.base_dim)?;
        let n = self.base_dim;
        let m = self.carrier_dim;
        let rho: Vec<LinearMap> = (0..n * n).map(|p| self.matrix(p / n, p % n)).collect();
        let d: Vec<LinearMap> = (0..n * n).map(|p| self.d_matrix(p / n, p % n)).collect();
        let rho_at = |i: usize, j: usize| &rho[i * n + j];
        let d_at = |i: usize, j: usize| &d[i * n + j];
        // ρ(x, v) and ρ(v, x) for v a bracket value
        let rho_lin = |first: Option<usize>, second: Option<usize>, v: &[Scalar]| {
            let mut acc = LinearMap::zeros(m, m);
            for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mat = match (first, second) {
                    (Some(i), None) => rho_at(i, k),
                    (None, Some(j)) => rho_at(k, j),
                    _ => unreachable!(),
                };
                acc = acc.add(&mat.scale(c)).expect("same shape");
            }
            acc
        };
        let first_bad_column = |lhs: &LinearMap, rhs: &LinearMap| (0..m).find(|&c| lhs.column(c) != rhs.column(c));

        let mut first = None;
        let mut second = None;
        for tup in 0..power(n, 4) {
            if first.is_some() && second.is_some() {
                break;
            }
            let [x, y, z, w] = decode::<4>(tup, n);
            if first.is_none() {
                let a = rho_at(z, w).compose(rho_at(x, y))?;
                let b = rho_at(y, w).compose(rho_at(x, z))?;
                let c = rho_lin(Some(x), None, t.bracket_basis(y, z, w));
                let e = d_at(y, z).compose(rho_at(x, w))?;
                let lhs = a.add(&e)?;
                let rhs = b.add(&c)?;
                if let Some(col) = first_bad_column(&lhs, &rhs) {
                    first = Some(vec![x, y, z, w, col]);
                }
            }
            if second.is_none() {
                let a = rho_lin(None, Some(w), t.bracket_basis(x, y, z));
                let b = rho_lin(Some(z), None, t.bracket_basis(x, y, w));
                let lhs = a.add(&b)?;
                let c1 = d_at(x, y).compose(rho_at(z, w))?;
                let c2 = rho_at(z, w).compose(d_at(x, y))?;
                let rhs = c1.add(&c2.scale(&Scalar::from_int(-1)))?;
                if let Some(col) = first_bad_column(&lhs, &rhs) {
                    second = Some(vec![x, y, z, w, col]);
                }
            }
        }
        Ok(RepresentationReport {
            checks: vec![
                RepresentationCheck { identity: RepresentationIdentity::First, counterexample: first },
                RepresentationCheck { identity: RepresentationIdentity::Second, counterexample: second },
            ],
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationIdentity {
    /// `ρ(z,w)ρ(x,y) − ρ(y,w)ρ(x,z) − ρ(x,[y,z,w]) + D(y,z)ρ(x,w) = 0`
    First,
    /// `ρ([x,y,z],w) + ρ(z,[x,y,w]) = [D(x,y), ρ(z,w)]`
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationCheck {
    pub identity: RepresentationIdentity,
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub checks: Vec<RepresentationCheck>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }

    pub fn first_failure(&self) -> Option<&RepresentationCheck> {
        self.checks.iter().find(|c| c.counterexample.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as examples;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn two_dim_example_passes() {
        let t = examples::two_dim_system();
        assert!(t.check_axioms().passed());
        assert_eq!(t.bracket_basis(1, 0, 1), &[s(-1), s(0)]);
    }

    #[test]
    fn zero_system_passes() {
        assert!(TripleSystem::zero(3).unwrap().check_axioms().passed());
    }

    #[test]
    fn broken_antisymmetry_located() {
        let t = TripleSystem::from_entries(2, [([0, 0, 1], vec![(1, s(1))])]).unwrap();
        let report = t.check_axioms();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.axiom, Axiom::Antisymmetry);
        assert_eq!(fail.counterexample.as_deref(), Some(&[0, 0, 1][..]));
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let r = TripleSystem::from_entries(2, [([0, 2, 1], vec![(1, s(1))])]);
        assert!(matches!(r, Err(Error::Malformed(_))));
        assert!(TripleSystem::from_constants(2, vec![Scalar::zero(); 15]).is_err());
    }

    #[test]
    fn lie_algebra_lift_matches_hand_expansion() {
        // [e0,e1] = e0  =>  [[e0,e1],e1] = e0, [[e1,e0],e1] = -e0, everything else 0
        let lie = LieAlgebra::from_antisymmetric_entries(2, [([0, 1], vec![(0, s(1))])]).unwrap();
        let t = TripleSystem::from_lie_algebra(&lie).unwrap();
        assert_eq!(t, examples::two_dim_system());
    }

    #[test]
    fn abelian_lie_algebra_gives_zero() {
        let lie = LieAlgebra::from_entries(3, []).unwrap();
        assert!(TripleSystem::from_lie_algebra(&lie).unwrap().is_zero());
    }

    #[test]
    fn sl2_lift_passes_axioms() {
        let t = TripleSystem::from_lie_algebra(&examples::sl2()).unwrap();
        assert!(t.check_axioms().passed());
        assert!(!t.is_zero());
    }

    #[test]
    fn jacobi_failure_rejected() {
        // [e0,e1]=e2, [e1,e2]=e1, [e0,e2]=0 violates Jacobi
        let lie =
            LieAlgebra::from_antisymmetric_entries(3, [([0, 1], vec![(2, s(1))]), ([1, 2], vec![(1, s(1))])]).unwrap();
        assert!(matches!(
            TripleSystem::from_lie_algebra(&lie),
            Err(Error::InvalidLieAlgebra { reason: "Jacobi identity fails", .. })
        ));
    }

    #[test]
    fn leibniz_bracket_example_value() {
        let t = examples::two_dim_system();
        let lb = t.fundamental_leibniz_bracket();
        // [e0⊗e1, e1⊗e1]_F = [e0,e1,e1]⊗e1 + e1⊗[e0,e1,e1] = e0⊗e1 + e1⊗e0
        let v = lb.bracket_basis(1, 3);
        let mut expected = vec![Scalar::zero(); 4];
        expected[1] = s(1);
        expected[2] = s(1);
        assert_eq!(v, &expected[..]);
        assert!(lb.satisfies_leibniz());
        assert!(TripleSystem::zero(2).unwrap().fundamental_leibniz_bracket().satisfies_leibniz());
    }

    #[test]
    fn adjoint_entries_and_left_multiplication() {
        let t = examples::two_dim_system();
        let r = t.adjoint_representation();
        for (i, j, c) in (0..8).map(|p| (p / 4, (p / 2) % 2, p % 2)) {
            assert_eq!(r.act(i, j, c), t.bracket_basis(c, i, j));
            assert_eq!(r.d_matrix(i, j), t.left_multiplication(i, j));
        }
        // ρ(e0,e1)e0 = [e0,e0,e1] = 0
        assert!(all_zero(r.act(0, 1, 0)));
        assert!(r.check(&t).unwrap().passed());
    }

    #[test]
    fn zero_rep_passes_identity_rep_fails() {
        let t = examples::two_dim_system();
        assert!(Representation::zero(2, 3).unwrap().check(&t).unwrap().passed());
        let id = Representation::from_matrices(2, 2, |_, _| LinearMap::identity(2)).unwrap();
        let report = id.check(&t).unwrap();
        assert!(!report.passed());
        let semi = t.semidirect_product(&id).unwrap();
        assert!(!semi.check_axioms().passed());
    }

    #[test]
    fn semidirect_with_adjoint() {
        let t = examples::two_dim_system();
        let semi = t.semidirect_product(&t.adjoint_representation()).unwrap();
        // [(e0,0),(e1,0),(0,e1)] = (0, D(e0,e1)e1) = (0, e0)
        assert_eq!(semi.bracket_basis(0, 1, 3), &[s(0), s(0), s(1), s(0)]);
        assert!(semi.check_axioms().passed());
    }

    #[test]
    fn semidirect_with_zero_rep_is_direct_sum() {
        let t = examples::two_dim_system();
        let semi = t.semidirect_product(&Representation::zero(2, 1).unwrap()).unwrap();
        assert_eq!(semi.restrict(&[0, 1]).unwrap(), t);
        for a in 0..3 {
            for b in 0..3 {
                assert!(all_zero(semi.bracket_basis(a, b, 2)));
                assert!(all_zero(semi.bracket_basis(2, a, b)));
            }
        }
    }

    #[test]
    fn representation_dimension_mismatch() {
        let t = examples::two_dim_system();
        let r = Representation::zero(3, 2).unwrap();
        assert!(matches!(r.check(&t), Err(Error::DimensionMismatch { .. })));
        assert!(t.semidirect_product(&r).is_err());
    }
}
