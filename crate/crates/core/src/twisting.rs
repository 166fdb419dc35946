//! Twisting `Θ^H` of a structure on `g1 ⊕ g2` by a map `H: g2 → g1`, and the
//! proto / quasi / twilled / strict classification.

use serde::Serialize;

use crate::cochain::{
    decompose_theta, graded_bracket, lift_linear_map, Bidegree, Block, BlockMap, Cochain, SplitContext, ThetaComponents,
};
use crate::error::{Error, Result};
use crate::linear::LinearMap;
use crate::scalar::Scalar;
use crate::system::TripleSystem;

/// A Lie triple system structure `Θ` on `g1 ⊕ g2` together with its five components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtoTwilledStructure {
    ctx: SplitContext,
    theta: Cochain,
    components: ThetaComponents,
}

impl ProtoTwilledStructure {
    /// Validates the alternating, cyclic and Maurer-Cartan conditions.
    pub fn new(theta: Cochain, ctx: SplitContext) -> Result<Self> {
        let lts = theta.lts_constraints();
        if let Some(t) = lts.alternating {
            return Err(Error::InvalidStructure(format!("not alternating at {t:?}")));
        }
        if let Some(t) = lts.cyclic {
            return Err(Error::InvalidStructure(format!("cyclic sum nonzero at {t:?}")));
        }
        let mc = graded_bracket(&theta, &theta)?;
        if let Some((t, _)) = mc.nonzero_entries().into_iter().next() {
            return Err(Error::InvalidStructure(format!("[Θ,Θ] nonzero at {t:?}")));
        }
        let components = decompose_theta(&theta, &ctx)?;
        Ok(ProtoTwilledStructure { ctx, theta, components })
    }

    pub fn from_system(t: &TripleSystem, ctx: SplitContext) -> Result<Self> {
        Self::new(Cochain::from_system(t), ctx)
    }

    pub fn ctx(&self) -> &SplitContext {
        &self.ctx
    }

    pub fn theta(&self) -> &Cochain {
        &self.theta
    }

    pub fn components(&self) -> &ThetaComponents {
        &self.components
    }

    pub fn system(&self) -> TripleSystem {
        self.theta.to_system().expect("degree-1 cochain")
    }

    pub fn classify(&self) -> Result<Classification> {
        classify_components(&self.components)
    }

    /// `Θ^H`, computed by conjugation and cross-checked against the series.
    pub fn twist(&self, h: &LinearMap) -> Result<ProtoTwilledStructure> {
        let conj = twist_conjugation(&self.theta, h, &self.ctx)?;
        let series = twist_series(&self.theta, h, &self.ctx)?;
        if let Some(t) = conj.first_difference(&series)? {
            return Err(Error::Internal(format!("series and conjugation twists differ at {t:?}")));
        }
        Self::new(conj, self.ctx)
    }
}

/// `X_Ĥ(P) = [P, Ĥ]`.
pub fn x_hat(p: &Cochain, h_hat: &Cochain) -> Result<Cochain> {
    graded_bracket(p, h_hat)
}

/// `Θ + X(Θ) + X²(Θ)/2 + X³(Θ)/6 + X⁴(Θ)/24`, checking that `X⁵(Θ) = 0`.
pub fn twist_series(theta: &Cochain, h: &LinearMap, ctx: &SplitContext) -> Result<Cochain> {
    let h_hat = lift_linear_map(h, ctx)?;
    let mut term = theta.clone();
    let mut acc = theta.clone();
    for k in 1..=4u32 {
        term = x_hat(&term, &h_hat)?;
        acc = acc.add(&term.scale(&Scalar::inv_factorial(k)))?;
    }
    if !x_hat(&term, &h_hat)?.is_zero() {
        return Err(Error::Internal("fifth power of X is nonzero".into()));
    }
    Ok(acc)
}

/// `(Id − Ĥ) ∘ Θ ∘ ((Id + Ĥ) ⊗ (Id + Ĥ) ⊗ (Id + Ĥ))`.
pub fn twist_conjugation(theta: &Cochain, h: &LinearMap, ctx: &SplitContext) -> Result<Cochain> {
    let h_hat = lift_linear_map(h, ctx)?.to_linear_map()?;
    let n = ctx.total();
    let id = LinearMap::identity(n);
    let plus = id.add(&h_hat)?;
    let minus = id.add(&h_hat.scale(&Scalar::from_int(-1)))?;
    theta.precompose_all(&plus)?.postcompose(&minus)
}

/// Components of `Θ^H` from the components of `Θ`, term by term.
pub fn twist_components(c: &ThetaComponents, h: &LinearMap, ctx: &SplitContext) -> Result<ThetaComponents> {
    let h_hat = lift_linear_map(h, ctx)?;
    // powers[i][k] = X^k applied to the i-th component
    let powers: Vec<Vec<Cochain>> = c
        .as_array()
        .iter()
        .enumerate()
        .map(|(i, comp)| {
            let mut v = vec![(*comp).clone()];
            for _ in 0..(4 - i.min(4)) {
                let next = x_hat(v.last().expect("nonempty"), &h_hat)?;
                v.push(next);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let term = |i: usize, k: usize| powers[i][k].scale(&Scalar::inv_factorial(k as u32));
    let slot = |j: usize| -> Result<Cochain> {
        // component j of Θ^H collects X^k of component j − k
        let terms: Vec<Cochain> = (0..=j).map(|k| term(j - k, k)).collect();
        Cochain::sum(&terms)
    };
    Ok(ThetaComponents { phi1: slot(0)?, mu1: slot(1)?, psi: slot(2)?, mu2: slot(3)?, phi2: slot(4)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Proto,
    Quasi,
    Twilled,
    Strict,
}

impl std::fmt::Display for StructureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StructureKind::Proto => "proto-twilled",
            StructureKind::Quasi => "quasi-twilled",
            StructureKind::Twilled => "twilled",
            StructureKind::Strict => "strict twilled",
        })
    }
}

/// One bracket equation of a condition system, e.g. `[ψ,μ1] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub bidegree: Bidegree,
    pub equation: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: StructureKind,
    pub phi1_zero: bool,
    pub phi2_zero: bool,
    pub psi_zero: bool,
    /// The bracket conditions of the system for `kind`, all of which hold.
    pub conditions: Vec<ConditionCheck>,
}

impl Classification {
    pub fn is_twilled(&self) -> bool {
        self.kind >= StructureKind::Twilled
    }
}

/// Brackets `[c_i, c_j]` of the five components, `i ≤ j`, indexed as in
/// [`ThetaComponents::as_array`].
struct BracketTable {
    table: Vec<Vec<Option<Cochain>>>,
}

impl BracketTable {
    fn new(c: &ThetaComponents) -> Result<Self> {
        let comps = c.as_array();
        let mut table = vec![vec![None; 5]; 5];
        for i in 0..5 {
            for j in i..5 {
                if comps[i].is_zero() || comps[j].is_zero() {
                    continue;
                }
                table[i][j] = Some(graded_bracket(comps[i], comps[j])?);
            }
        }
        Ok(BracketTable { table })
    }

    /// `Σ coef · [c_i, c_j]` is zero.
    fn vanishes(&self, terms: &[(usize, usize, Scalar)]) -> Result<bool> {
        let mut acc: Option<Cochain> = None;
        for (i, j, coef) in terms {
            let (a, b) = if i <= j { (*i, *j) } else { (*j, *i) };
            if let Some(br) = &self.table[a][b] {
                let scaled = br.scale(coef);
                acc = Some(match acc {
                    Some(x) => x.add(&scaled)?,
                    None => scaled,
                });
            }
        }
        Ok(acc.is_none_or(|c| c.is_zero()))
    }
}

const PHI1: usize = 0;
const MU1: usize = 1;
const PSI: usize = 2;
const MU2: usize = 3;
const PHI2: usize = 4;

type Equation = (Bidegree, &'static str, &'static [(usize, usize, i64, i64)]);

/// The bidegree components of `½[Θ,Θ] = 0`. Brackets of symmetric pairs carry
/// the factor `1/2`.
const PROTO: &[Equation] = &[
    (Bidegree::new(5, -1), "[φ1,μ1] = 0", &[(PHI1, MU1, 1, 1)]),
    (Bidegree::new(4, 0), "[ψ,φ1] + ½[μ1,μ1] = 0", &[(PSI, PHI1, 1, 1), (MU1, MU1, 1, 2)]),
    (Bidegree::new(3, 1), "[φ1,μ2] + [ψ,μ1] = 0", &[(PHI1, MU2, 1, 1), (PSI, MU1, 1, 1)]),
    (Bidegree::new(2, 2), "[φ1,φ2] + [μ1,μ2] + ½[ψ,ψ] = 0", &[(PHI1, PHI2, 1, 1), (MU1, MU2, 1, 1), (PSI, PSI, 1, 2)]),
    (Bidegree::new(1, 3), "[μ1,φ2] + [ψ,μ2] = 0", &[(MU1, PHI2, 1, 1), (PSI, MU2, 1, 1)]),
    (Bidegree::new(0, 4), "[ψ,φ2] + ½[μ2,μ2] = 0", &[(PSI, PHI2, 1, 1), (MU2, MU2, 1, 2)]),
    (Bidegree::new(-1, 5), "[μ2,φ2] = 0", &[(MU2, PHI2, 1, 1)]),
];

const QUASI: &[Equation] = &[
    PROTO[0],
    PROTO[1],
    PROTO[2],
    (Bidegree::new(2, 2), "[μ1,μ2] + ½[ψ,ψ] = 0", &[(MU1, MU2, 1, 1), (PSI, PSI, 1, 2)]),
    (Bidegree::new(1, 3), "[ψ,μ2] = 0", &[(PSI, MU2, 1, 1)]),
    (Bidegree::new(0, 4), "½[μ2,μ2] = 0", &[(MU2, MU2, 1, 2)]),
];

const TWILLED: &[Equation] = &[
    (Bidegree::new(4, 0), "½[μ1,μ1] = 0", &[(MU1, MU1, 1, 2)]),
    (Bidegree::new(3, 1), "[ψ,μ1] = 0", &[(PSI, MU1, 1, 1)]),
    QUASI[3],
    QUASI[4],
    QUASI[5],
];

const STRICT: &[Equation] = &[TWILLED[0], (Bidegree::new(2, 2), "[μ1,μ2] = 0", &[(MU1, MU2, 1, 1)]), TWILLED[4]];

fn evaluate(table: &BracketTable, system: &[Equation]) -> Result<Vec<ConditionCheck>> {
    system
        .iter()
        .map(|(bidegree, equation, terms)| {
            let terms: Vec<(usize, usize, Scalar)> =
                terms.iter().map(|&(i, j, n, d)| Ok((i, j, Scalar::new(n, d)?))).collect::<Result<_>>()?;
            Ok(ConditionCheck { bidegree: *bidegree, equation, holds: table.vanishes(&terms)? })
        })
        .collect()
}

/// Condition system for a given kind, evaluated on the components of `Θ`.
pub fn condition_system(c: &ThetaComponents, kind: StructureKind) -> Result<Vec<ConditionCheck>> {
    let table = BracketTable::new(c)?;
    evaluate(
        &table,
        match kind {
            StructureKind::Proto => PROTO,
            StructureKind::Quasi => QUASI,
            StructureKind::Twilled => TWILLED,
            StructureKind::Strict => STRICT,
        },
    )
}

fn classify_components(c: &ThetaComponents) -> Result<Classification> {
    let phi1_zero = c.phi1.is_zero();
    let phi2_zero = c.phi2.is_zero();
    let psi_zero = c.psi.is_zero();
    let kind = match (phi1_zero, phi2_zero, psi_zero) {
        (true, true, true) => StructureKind::Strict,
        (true, true, false) => StructureKind::Twilled,
        (_, true, _) => StructureKind::Quasi,
        _ => StructureKind::Proto,
    };
    let table = BracketTable::new(c)?;
    let mut systems = vec![PROTO];
    if kind >= StructureKind::Quasi {
        systems.push(QUASI);
    }
    if kind >= StructureKind::Twilled {
        systems.push(TWILLED);
    }
    if kind == StructureKind::Strict {
        systems.push(STRICT);
    }
    let mut conditions = Vec::new();
    for system in systems {
        conditions = evaluate(&table, system)?;
        if let Some(bad) = conditions.iter().find(|c| !c.holds) {
            return Err(Error::Internal(format!("vanishing pattern says {kind} but {} fails", bad.equation)));
        }
    }
    Ok(Classification { kind, phi1_zero, phi2_zero, psi_zero, conditions })
}

/// Validates `Θ` as a structure and classifies it.
pub fn classify(theta: &Cochain, ctx: &SplitContext) -> Result<Classification> {
    ProtoTwilledStructure::new(theta.clone(), *ctx)?.classify()
}

/// The bracket `⟦u,v,w⟧_H` on `g2` induced by a twist that keeps the structure twilled:
/// `⟦u,v,w⟧_2` plus the six terms with `H` applied to one or two arguments.
pub fn twisted_g2_bracket(tw: &ProtoTwilledStructure, h: &LinearMap) -> Result<TripleSystem> {
    if !tw.classify()?.is_twilled() {
        return Err(Error::NotTwilled("the structure is not twilled".into()));
    }
    let ctx = *tw.ctx();
    let twisted = tw.twist(h)?;
    if !twisted.classify()?.is_twilled() {
        return Err(Error::NotTwilled("the twisted structure is not twilled".into()));
    }
    let (n1, n2) = (ctx.n1(), ctx.n2());
    let theta = tw.theta();
    let lift = |u: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); ctx.total()];
        v[n1 + u] = Scalar::one();
        v
    };
    let image = |u: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); ctx.total()];
        v[..n1].clone_from_slice(h.column(u));
        v
    };
    let formula = TripleSystem::from_fn(n2, |u, v, w| {
        let (lu, lv, lw) = (lift(u), lift(v), lift(w));
        let (hu, hv, hw) = (image(u), image(v), image(w));
        let args: [[&[Scalar]; 3]; 7] = [
            [&lu, &lv, &lw],
            [&hu, &lv, &lw],
            [&lu, &hv, &lw],
            [&lu, &lv, &hw],
            [&hu, &hv, &lw],
            [&lu, &hv, &hw],
            [&hu, &lv, &hw],
        ];
        let mut acc = vec![Scalar::zero(); n2];
        for a in args {
            let val = theta.eval(&a).expect("dimensions match");
            for (o, x) in acc.iter_mut().zip(&val[n1..]) {
                *o = &*o + x;
            }
        }
        acc
    })?;
    let mu2 = BlockMap::restrict(&twisted.components().mu2, &ctx, vec![Block::G2; 3], Block::G2)?;
    let from_component = TripleSystem::from_fn(n2, |u, v, w| mu2.value(&[u, v, w]).to_vec())?;
    if formula != from_component {
        return Err(Error::Internal("induced bracket on g2 disagrees with the twisted μ2 component".into()));
    }
    Ok(formula)
}
