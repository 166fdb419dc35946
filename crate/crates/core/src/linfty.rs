//! The `L∞` brackets on `C*(g2, g1)` derived from a twilled structure, and the
//! Maurer-Cartan residual of a map `H: g2 → g1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{
    bidegree_of, graded_bracket, lift_component, lift_linear_map, Bidegree, BidegreeOutcome, Block, BlockMap, Cochain,
    SplitContext, ThetaComponents,
};
use crate::error::{Error, Result};
use crate::linear::LinearMap;
use crate::scalar::Scalar;
use crate::twisting::ProtoTwilledStructure;

/// A degree-`p` map `⊗^{2p+1} g2 → g1`, held through its lift to `g1 ⊕ g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCochain {
    ctx: SplitContext,
    lift: Cochain,
}

impl HomCochain {
    pub fn zero(ctx: SplitContext, degree: usize) -> Result<Self> {
        Ok(HomCochain { ctx, lift: Cochain::zero(ctx.total(), degree)? })
    }

    /// Builds the map from its values on local `g2` basis tuples.
    pub fn from_fn(ctx: SplitContext, degree: usize, f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Result<Self> {
        let map = BlockMap::from_fn(ctx, vec![Block::G2; 2 * degree + 1], Block::G1, f)?;
        Ok(HomCochain { ctx, lift: lift_component(&map, &ctx)? })
    }

    pub fn from_linear_map(h: &LinearMap, ctx: SplitContext) -> Result<Self> {
        Ok(HomCochain { ctx, lift: lift_linear_map(h, &ctx)? })
    }

    /// Accepts a cochain on `g1 ⊕ g2` whose bidegree is `−1|2p+1` (or zero).
    pub fn from_lift(lift: Cochain, ctx: SplitContext) -> Result<Self> {
        let expected = Bidegree::new(-1, 2 * lift.degree() as i64 + 1);
        match bidegree_of(&lift, &ctx)? {
            BidegreeOutcome::Indeterminate => {}
            BidegreeOutcome::Homogeneous { bidegree } if bidegree == expected => {}
            other => return Err(Error::Internal(format!("expected bidegree {expected}, found {other:?}"))),
        }
        Ok(HomCochain { ctx, lift })
    }

    pub fn degree(&self) -> usize {
        self.lift.degree()
    }

    pub fn lift(&self) -> &Cochain {
        &self.lift
    }

    pub fn ctx(&self) -> &SplitContext {
        &self.ctx
    }

    /// Value on local `g2` indices, as a vector in `g1`.
    pub fn value(&self, local: &[usize]) -> Vec<Scalar> {
        let global: Vec<usize> = local.iter().map(|&u| self.ctx.n1() + u).collect();
        self.lift.value(&global)[..self.ctx.n1()].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.lift.is_zero()
    }

    pub fn to_linear_map(&self) -> Result<LinearMap> {
        if self.degree() != 0 {
            return Err(Error::Malformed("only degree-0 cochains are linear maps".into()));
        }
        Ok(LinearMap::from_fn(self.ctx.n1(), self.ctx.n2(), |i, j| self.value(&[j])[i].clone()))
    }

    fn check(&self, ctx: &SplitContext) -> Result<()> {
        if self.ctx != *ctx {
            return Err(Error::DimensionMismatch {
                context: "cochain split",
                expected: ctx.total(),
                found: self.ctx.total(),
            });
        }
        Ok(())
    }
}

/// A structure verified to be twilled (`φ1 = φ2 = 0`).
#[derive(Clone, Debug)]
pub struct Twilled {
    inner: ProtoTwilledStructure,
}

impl Twilled {
    pub fn new(s: ProtoTwilledStructure) -> Result<Self> {
        let c = s.classify()?;
        if !c.is_twilled() {
            return Err(Error::NotTwilled(format!("structure is {}", c.kind)));
        }
        Ok(Twilled { inner: s })
    }

    pub fn structure(&self) -> &ProtoTwilledStructure {
        &self.inner
    }

    pub fn ctx(&self) -> &SplitContext {
        self.inner.ctx()
    }

    fn components(&self) -> &ThetaComponents {
        self.inner.components()
    }

    fn wrap(&self, c: Cochain) -> Result<HomCochain> {
        HomCochain::from_lift(c, *self.ctx())
    }

    /// `l1(f) = [μ̂2, f̂]`.
    pub fn l1(&self, f: &HomCochain) -> Result<HomCochain> {
        f.check(self.ctx())?;
        self.wrap(graded_bracket(&self.components().mu2, f.lift())?)
    }

    /// `l2(f, g) = [[ψ̂, f̂], ĝ]`.
    pub fn l2(&self, f: &HomCochain, g: &HomCochain) -> Result<HomCochain> {
        f.check(self.ctx())?;
        g.check(self.ctx())?;
        let inner = graded_bracket(&self.components().psi, f.lift())?;
        self.wrap(graded_bracket(&inner, g.lift())?)
    }

    /// `l3(f, g, h) = [[[μ̂1, f̂], ĝ], ĥ]`.
    pub fn l3(&self, f: &HomCochain, g: &HomCochain, h: &HomCochain) -> Result<HomCochain> {
        for x in [f, g, h] {
            x.check(self.ctx())?;
        }
        let a = graded_bracket(&self.components().mu1, f.lift())?;
        let b = graded_bracket(&a, g.lift())?;
        self.wrap(graded_bracket(&b, h.lift())?)
    }

    /// `l1(H) + l2(H,H)/2 + l3(H,H,H)/6`.
    pub fn mc_residual(&self, h: &HomCochain) -> Result<HomCochain> {
        let a = self.l1(h)?;
        let b = self.l2(h, h)?;
        let c = self.l3(h, h, h)?;
        let sum =
            a.lift.add(&b.lift.scale(&Scalar::inv_factorial(2)))?.add(&c.lift.scale(&Scalar::inv_factorial(3)))?;
        self.wrap(sum)
    }

    /// Residual of `H`, whether `Θ^H` is twilled, and whether the residual
    /// equals the `−1|3` component of `Θ^H`.
    pub fn mc_check(&self, h: &LinearMap) -> Result<McCheck> {
        let hc = HomCochain::from_linear_map(h, *self.ctx())?;
        let residual = self.mc_residual(&hc)?;
        let twisted = self.inner.twist(h)?;
        let class = twisted.classify()?;
        let matches_phi2 = residual.lift() == &twisted.components().phi2;
        Ok(McCheck {
            residual_zero: residual.is_zero(),
            twisted_kind: class.kind,
            twisted_is_twilled: class.is_twilled(),
            residual_matches_phi2: matches_phi2,
            residual_nonzero_entries: residual.lift().nonzero_entries().len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McCheck {
    pub residual_zero: bool,
    pub twisted_kind: crate::twisting::StructureKind,
    pub twisted_is_twilled: bool,
    pub residual_matches_phi2: bool,
    pub residual_nonzero_entries: usize,
}

impl McCheck {
    /// The biconditional `residual = 0 ⇔ Θ^H twilled` and the identification with `φ̂2^H`.
    pub fn consistent(&self) -> bool {
        self.residual_zero == self.twisted_is_twilled && self.residual_matches_phi2
    }
}

/// Runs [`Twilled::mc_check`] on every map in `maps`, in parallel.
pub fn mc_grid(tw: &Twilled, maps: &[LinearMap]) -> Result<Vec<McCheck>> {
    maps.par_iter().map(|h| tw.mc_check(h)).collect()
}

/// Spanning set of `C^p(g2, g1)` for `p ≤ 1`: elementary maps, made
/// alternating in the last pair and cyclically balanced for `p = 1`.
pub fn spanning_set(ctx: SplitContext, degree: usize) -> Result<Vec<HomCochain>> {
    let (n1, n2) = (ctx.n1(), ctx.n2());
    let mut out = Vec::new();
    match degree {
        0 => {
            for u in 0..n2 {
                for i in 0..n1 {
                    out.push(HomCochain::from_fn(ctx, 0, |a| unit(n1, i, a[0] == u))?);
                }
            }
        }
        1 => {
            let third = Scalar::new(1, 3)?;
            for u in 0..n2 {
                for v in 0..n2 {
                    for w in 0..n2 {
                        for i in 0..n1 {
                            let g = |a: &[usize]| -> Scalar {
                                let e = |x: usize, y: usize, z: usize| (x, y, z) == (u, v, w);
                                let one = |b: bool| if b { Scalar::one() } else { Scalar::zero() };
                                &one(e(a[0], a[1], a[2])) - &one(e(a[1], a[0], a[2]))
                            };
                            let h = HomCochain::from_fn(ctx, 1, |a| {
                                let c = &(&g(a) + &g(&[a[1], a[2], a[0]])) + &g(&[a[2], a[0], a[1]]);
                                let val = &g(a) - &(&c * &third);
                                let mut v = vec![Scalar::zero(); n1];
                                v[i] = val;
                                v
                            })?;
                            if !h.is_zero() && !out.contains(&h) {
                                out.push(h);
                            }
                        }
                    }
                }
            }
        }
        _ => return Err(Error::Malformed(format!("spanning sets are provided for degrees 0 and 1, not {degree}"))),
    }
    Ok(out)
}

fn unit(n: usize, i: usize, on: bool) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    if on {
        v[i] = Scalar::one();
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialCondition {
    pub equation: &'static str,
    pub holds: bool,
    /// Index into the spanning set of the first element on which it fails.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub spanning_set_size: usize,
    pub d1_vanishes: bool,
    pub conditions: Vec<DifferentialCondition>,
}

impl DifferentialReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

/// Checks `Σ_{i+j=n} d_i ∘ d_j = 0` for `d0 = [μ̂2,·]`, `d1 = [ψ̂,·]`,
/// `d2 = [μ̂1,·]` on the spanning sets of degrees up to `max_degree`.
/// Works on any decomposition, so a failure pinpoints which relation breaks.
pub fn derived_differential_check(
    c: &ThetaComponents,
    ctx: SplitContext,
    max_degree: usize,
) -> Result<DifferentialReport> {
    let mut span = Vec::new();
    for p in 0..=max_degree {
        span.extend(spanning_set(ctx, p)?);
    }
    let ds = [&c.mu2, &c.psi, &c.mu1];
    const EQUATIONS: [(&str, &[(usize, usize)]); 5] = [
        ("d0d0 = 0", &[(0, 0)]),
        ("d0d1 + d1d0 = 0", &[(0, 1), (1, 0)]),
        ("d0d2 + d1d1 + d2d0 = 0", &[(0, 2), (1, 1), (2, 0)]),
        ("d1d2 + d2d1 = 0", &[(1, 2), (2, 1)]),
        ("d2d2 = 0", &[(2, 2)]),
    ];
    // per element: first-order images and the vanishing of each equation
    let results: Vec<(bool, [bool; 5])> = span
        .par_iter()
        .map(|f| -> Result<(bool, [bool; 5])> {
            let once: Vec<Cochain> = ds.iter().map(|d| graded_bracket(d, f.lift())).collect::<Result<_>>()?;
            let mut ok = [true; 5];
            for (slot, (_, terms)) in EQUATIONS.iter().enumerate() {
                let parts: Vec<Cochain> =
                    terms.iter().map(|&(i, j)| graded_bracket(ds[i], &once[j])).collect::<Result<_>>()?;
                ok[slot] = Cochain::sum(&parts)?.is_zero();
            }
            Ok((once[1].is_zero(), ok))
        })
        .collect::<Result<_>>()?;
    let conditions = EQUATIONS
        .iter()
        .enumerate()
        .map(|(slot, (equation, _))| {
            let first_failure = results.iter().position(|(_, ok)| !ok[slot]);
            DifferentialCondition { equation, holds: first_failure.is_none(), first_failure }
        })
        .collect();
    Ok(DifferentialReport { spanning_set_size: span.len(), d1_vanishes: results.iter().all(|(z, _)| *z), conditions })
}
