use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{graded_bracket, Cochain};
use crate::error::{check_dim, Error, Result};
use crate::linear::LinearMap;
use crate::scalar::{all_zero, Scalar};
use crate::tuples::{decode_into, encode, power};

/// Which summand of `g1 ⊕ g2` a basis index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    G1,
    G2,
}

/// A splitting `K^N = g1 ⊕ g2` with `g1` spanned by the first `n1` basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitContext {
    n1: usize,
    n2: usize,
}

impl SplitContext {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Malformed("both summands of a split must be nonzero".into()));
        }
        Ok(SplitContext { n1, n2 })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn block(&self, i: usize) -> Block {
        if i < self.n1 {
            Block::G1
        } else {
            Block::G2
        }
    }

    pub fn block_dim(&self, b: Block) -> usize {
        match b {
            Block::G1 => self.n1,
            Block::G2 => self.n2,
        }
    }

    pub fn offset(&self, b: Block) -> usize {
        match b {
            Block::G1 => 0,
            Block::G2 => self.n1,
        }
    }

    /// Global index of local index `i` in block `b`.
    pub fn global(&self, b: Block, i: usize) -> usize {
        self.offset(b) + i
    }

    fn check(&self, c: &Cochain) -> Result<()> {
        check_dim("cochain dimension vs split", self.total(), c.dim())
    }
}

/// The bidegree `l|k` of a homogeneous cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub l: i64,
    pub k: i64,
}

impl Bidegree {
    pub const fn new(l: i64, k: i64) -> Self {
        Bidegree { l, k }
    }

    /// Bidegree contributed by a single entry: `a` of the `arity` inputs lie
    /// in `g1` and the output coordinate lies in `out`.
    pub fn of_entry(a: usize, arity: usize, out: Block) -> Self {
        let (a, m) = (a as i64, arity as i64);
        match out {
            Block::G1 => Bidegree::new(a - 1, m - a),
            Block::G2 => Bidegree::new(a, m - 1 - a),
        }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.l + o.l, self.k + o.k)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.l, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BidegreeOutcome {
    /// The zero cochain, which satisfies every bidegree.
    Indeterminate,
    Homogeneous {
        bidegree: Bidegree,
    },
    Inhomogeneous {
        found: Vec<Bidegree>,
    },
}

impl BidegreeOutcome {
    pub fn bidegree(&self) -> Option<Bidegree> {
        match self {
            BidegreeOutcome::Homogeneous { bidegree } => Some(*bidegree),
            _ => None,
        }
    }
}

fn g1_count(ctx: &SplitContext, idx: &[usize]) -> usize {
    idx.iter().filter(|&&i| i < ctx.n1).count()
}

/// Splits a cochain into its homogeneous pieces, keyed by bidegree. Zero
/// pieces are omitted.
pub fn homogeneous_parts(c: &Cochain, ctx: &SplitContext) -> Result<BTreeMap<Bidegree, Cochain>> {
    ctx.check(c)?;
    let n = c.dim();
    let arity = c.arity();
    let mut parts: BTreeMap<Bidegree, Cochain> = BTreeMap::new();
    let mut idx = vec![0usize; arity];
    for t in 0..c.num_inputs() {
        let v = c.value_at(t);
        if all_zero(v) {
            continue;
        }
        decode_into(t, n, &mut idx);
        let a = g1_count(ctx, &idx);
        for (m, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let b = Bidegree::of_entry(a, arity, ctx.block(m));
            let part = match parts.get_mut(&b) {
                Some(p) => p,
                None => parts.entry(b).or_insert(Cochain::zero(n, c.degree())?),
            };
            part.coeffs[t * n + m] = x.clone();
        }
    }
    Ok(parts)
}

/// Bidegree of a cochain, scanning every nonzero entry.
pub fn bidegree_of(c: &Cochain, ctx: &SplitContext) -> Result<BidegreeOutcome> {
    ctx.check(c)?;
    let n = c.dim();
    let arity = c.arity();
    let mut found = Vec::new();
    let mut idx = vec![0usize; arity];
    for t in 0..c.num_inputs() {
        let v = c.value_at(t);
        if all_zero(v) {
            continue;
        }
        decode_into(t, n, &mut idx);
        let a = g1_count(ctx, &idx);
        for (m, _) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let b = Bidegree::of_entry(a, arity, ctx.block(m));
            if !found.contains(&b) {
                found.push(b);
            }
        }
    }
    found.sort();
    Ok(match found.len() {
        0 => BidegreeOutcome::Indeterminate,
        1 => BidegreeOutcome::Homogeneous { bidegree: found[0] },
        _ => BidegreeOutcome::Inhomogeneous { found },
    })
}

/// The five homogeneous components of a degree-1 cochain on `g1 ⊕ g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaComponents {
    /// `3|−1`: `g1`-inputs to `g2`.
    pub phi1: Cochain,
    /// `2|0`.
    pub mu1: Cochain,
    /// `1|1`.
    pub psi: Cochain,
    /// `0|2`.
    pub mu2: Cochain,
    /// `−1|3`: `g2`-inputs to `g1`.
    pub phi2: Cochain,
}

impl ThetaComponents {
    pub const BIDEGREES: [Bidegree; 5] =
        [Bidegree::new(3, -1), Bidegree::new(2, 0), Bidegree::new(1, 1), Bidegree::new(0, 2), Bidegree::new(-1, 3)];

    pub fn as_array(&self) -> [&Cochain; 5] {
        [&self.phi1, &self.mu1, &self.psi, &self.mu2, &self.phi2]
    }

    pub fn sum(&self) -> Result<Cochain> {
        Cochain::sum(self.as_array())
    }
}

pub fn decompose_theta(theta: &Cochain, ctx: &SplitContext) -> Result<ThetaComponents> {
    if theta.degree() != 1 {
        return Err(Error::Malformed(format!("expected a degree-1 cochain, got degree {}", theta.degree())));
    }
    let mut parts = homogeneous_parts(theta, ctx)?;
    let mut take = |b: Bidegree| match parts.remove(&b) {
        Some(c) => Ok(c),
        None => Cochain::zero(theta.dim(), 1),
    };
    let [b0, b1, b2, b3, b4] = ThetaComponents::BIDEGREES;
    let out = ThetaComponents { phi1: take(b0)?, mu1: take(b1)?, psi: take(b2)?, mu2: take(b3)?, phi2: take(b4)? };
    if !parts.is_empty() {
        return Err(Error::Internal("degree-1 cochain with an unexpected bidegree".into()));
    }
    Ok(out)
}

/// The lift `Ĥ(x, u) = (H u, 0)` of `H: g2 → g1`.
pub fn lift_linear_map(h: &LinearMap, ctx: &SplitContext) -> Result<Cochain> {
    check_dim("lifted map rows (dim g1)", ctx.n1, h.rows())?;
    check_dim("lifted map cols (dim g2)", ctx.n2, h.cols())?;
    let n = ctx.total();
    Cochain::from_fn(n, 0, |idx| {
        let mut v = vec![Scalar::zero(); n];
        if idx[0] >= ctx.n1 {
            v[..ctx.n1].clone_from_slice(h.column(idx[0] - ctx.n1));
        }
        v
    })
}

/// A multilinear map defined on one mixed component, e.g. `g1 ⊗ g1 ⊗ g2 → g2`,
/// with coefficients indexed by local block coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    inputs: Vec<Block>,
    output: Block,
    ctx: SplitContext,
    coeffs: Vec<Scalar>,
}

impl BlockMap {
    pub fn from_fn(
        ctx: SplitContext,
        inputs: Vec<Block>,
        output: Block,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Result<Self> {
        if inputs.len().is_multiple_of(2) {
            return Err(Error::Malformed(format!("component maps need odd arity, got {}", inputs.len())));
        }
        let dims: Vec<usize> = inputs.iter().map(|&b| ctx.block_dim(b)).collect();
        let out_dim = ctx.block_dim(output);
        let count: usize = dims.iter().product();
        let mut coeffs = Vec::with_capacity(count * out_dim);
        let mut idx = vec![0usize; inputs.len()];
        for t in 0..count {
            mixed_decode(t, &dims, &mut idx);
            let v = f(&idx);
            check_dim("component value length", out_dim, v.len())?;
            coeffs.extend(v);
        }
        Ok(BlockMap { inputs, output, ctx, coeffs })
    }

    /// Restriction of a cochain to one component, projected onto `output`.
    pub fn restrict(c: &Cochain, ctx: &SplitContext, inputs: Vec<Block>, output: Block) -> Result<Self> {
        ctx.check(c)?;
        check_dim("component arity", c.arity(), inputs.len())?;
        let blocks = inputs.clone();
        let off = ctx.offset(output);
        let out_dim = ctx.block_dim(output);
        let mut global = vec![0usize; inputs.len()];
        Self::from_fn(*ctx, inputs, output, |local| {
            for (g, (&b, &i)) in global.iter_mut().zip(blocks.iter().zip(local)) {
                *g = ctx.global(b, i);
            }
            c.value(&global)[off..off + out_dim].to_vec()
        })
    }

    pub fn inputs(&self) -> &[Block] {
        &self.inputs
    }

    pub fn output(&self) -> Block {
        self.output
    }

    /// Value on local basis indices.
    pub fn value(&self, local: &[usize]) -> &[Scalar] {
        let dims: Vec<usize> = self.inputs.iter().map(|&b| self.ctx.block_dim(b)).collect();
        let t = local.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i);
        let od = self.ctx.block_dim(self.output);
        &self.coeffs[t * od..(t + 1) * od]
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.coeffs)
    }

    pub fn bidegree(&self) -> Bidegree {
        let a = self.inputs.iter().filter(|&&b| b == Block::G1).count();
        Bidegree::of_entry(a, self.inputs.len(), self.output)
    }
}

fn mixed_decode(mut t: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = t % d;
        t /= d;
    }
}

/// Zero extension of a component map to all of `g1 ⊕ g2`.
pub fn lift_component(f: &BlockMap, ctx: &SplitContext) -> Result<Cochain> {
    if f.ctx != *ctx {
        return Err(Error::DimensionMismatch {
            context: "component map split",
            expected: ctx.total(),
            found: f.ctx.total(),
        });
    }
    let arity = f.inputs.len();
    let degree = (arity - 1) / 2;
    let n = ctx.total();
    let mut c = Cochain::zero(n, degree)?;
    let dims: Vec<usize> = f.inputs.iter().map(|&b| ctx.block_dim(b)).collect();
    let count: usize = dims.iter().product();
    let off = ctx.offset(f.output);
    let mut local = vec![0usize; arity];
    let mut global = vec![0usize; arity];
    for t in 0..count {
        mixed_decode(t, &dims, &mut local);
        for (g, (&b, &i)) in global.iter_mut().zip(f.inputs.iter().zip(&local)) {
            *g = ctx.global(b, i);
        }
        let src = f.value(&local);
        let dst = encode(&global, n) * n + off;
        c.coeffs[dst..dst + src.len()].clone_from_slice(src);
    }
    debug_assert_eq!(c.coeffs.len(), power(n, arity) * n);
    Ok(c)
}

/// Checks `||[f, g]|| = ||f|| + ||g||` for homogeneous `f`, `g`. Returns the
/// bidegree of the bracket, or `Indeterminate` when it vanishes.
pub fn bidegree_bracket_law(f: &Cochain, g: &Cochain, ctx: &SplitContext) -> Result<BidegreeOutcome> {
    let bf = bidegree_of(f, ctx)?;
    let bg = bidegree_of(g, ctx)?;
    for (name, b) in [("f", &bf), ("g", &bg)] {
        if let BidegreeOutcome::Inhomogeneous { found } = b {
            let list: Vec<String> = found.iter().map(ToString::to_string).collect();
            return Err(Error::Inhomogeneous(format!("{name} has components of bidegrees {}", list.join(", "))));
        }
    }
    let bracket = graded_bracket(f, g)?;
    let got = bidegree_of(&bracket, ctx)?;
    match (bf.bidegree(), bg.bidegree(), &got) {
        (_, _, BidegreeOutcome::Indeterminate) => Ok(got),
        (Some(a), Some(b), BidegreeOutcome::Homogeneous { bidegree }) if *bidegree == a + b => Ok(got),
        _ => Err(Error::Internal(format!("bracket bidegree {got:?} does not match {bf:?} + {bg:?}"))),
    }
}
