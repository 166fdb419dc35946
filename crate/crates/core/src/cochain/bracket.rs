use rayon::prelude::*;

use super::Cochain;
use crate::error::{check_dim, Result};
use crate::scalar::Scalar;
use crate::tuples::{decode_into, shuffles, Shuffle};

fn sign_of(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Adds `coef · Q(qargs)_j · P(pargs with slot replaced by j)` over `j` into `acc`.
fn insert(p: &Cochain, q: &Cochain, qargs: &[usize], pargs: &mut [usize], slot: usize, coef: i64, acc: &mut [Scalar]) {
    let coef = Scalar::from_int(coef);
    let qv = q.value(qargs);
    for (j, c) in qv.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        pargs[slot] = j;
        let w = &coef * c;
        for (o, v) in acc.iter_mut().zip(p.value(pargs)) {
            if !v.is_zero() {
                o.add_product(&w, v);
            }
        }
    }
}

/// `P ∘ Q`, a cochain of degree `p + q`.
///
/// With pairs `X_1 … X_{p+q}` and final argument `x`:
///
/// * for `k = 1..=p` and each `(k−1, q)`-shuffle `σ`, `Q` applied to
///   `X_{σ(k)} … X_{σ(k+q−1)}` and one component of `X_{k+q}` is inserted
///   into that component, with sign `(−1)^{(k−1)q} (−1)^σ`;
/// * for each `(p, q)`-shuffle, `Q(X_{σ(p+1)} … X_{σ(p+q)}, x)` is inserted
///   into the final argument, with sign `(−1)^{pq} (−1)^σ`.
pub fn circle_product(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    check_dim("cochain dimension", p.dim(), q.dim())?;
    let n = p.dim();
    let (dp, dq) = (p.degree(), q.degree());
    let total = dp + dq;
    let arity = 2 * total + 1;
    let mut out = Cochain::zero(n, total)?;

    let inner: Vec<(usize, i64, Vec<Shuffle>)> =
        (1..=dp).map(|k| (k, sign_of((k - 1) * dq), shuffles(k - 1, dq))).collect();
    let outer = shuffles(dp, dq);
    let outer_sign = sign_of(dp * dq);

    out.coeffs.par_chunks_mut(n).enumerate().for_each_init(
        || (vec![0usize; arity], Vec::with_capacity(arity), Vec::with_capacity(arity)),
        |(idx, qargs, pargs), (t, acc)| {
            decode_into(t, n, idx);
            let pair = |i: usize| [idx[2 * i], idx[2 * i + 1]];
            for (k, sign0, shs) in &inner {
                let target = k + dq - 1;
                for sh in shs {
                    for slot in 0..2 {
                        qargs.clear();
                        for &i in &sh.perm[k - 1..] {
                            qargs.extend(pair(i));
                        }
                        qargs.push(idx[2 * target + slot]);
                        pargs.clear();
                        for &i in &sh.perm[..k - 1] {
                            pargs.extend(pair(i));
                        }
                        pargs.extend_from_slice(&idx[2 * target..]);
                        let at = 2 * (k - 1) + slot;
                        insert(p, q, qargs, pargs, at, sign0 * sh.sign, acc);
                    }
                }
            }
            for sh in &outer {
                qargs.clear();
                for &i in &sh.perm[dp..] {
                    qargs.extend(pair(i));
                }
                qargs.push(idx[arity - 1]);
                pargs.clear();
                for &i in &sh.perm[..dp] {
                    pargs.extend(pair(i));
                }
                pargs.push(0);
                let at = 2 * dp;
                insert(p, q, qargs, pargs, at, outer_sign * sh.sign, acc);
            }
        },
    );
    Ok(out)
}

/// `[P, Q] = P ∘ Q − (−1)^{pq} Q ∘ P`.
pub fn graded_bracket(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    let pq = circle_product(p, q)?;
    let qp = circle_product(q, p)?;
    if (p.degree() * q.degree()).is_multiple_of(2) {
        pq.sub(&qp)
    } else {
        pq.add(&qp)
    }
}
