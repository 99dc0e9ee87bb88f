//! Random instances and feasible points for property checks.

use num::{Signed, Zero};
use rand::Rng;

use super::{solve, LpError, OhcpInstance, SolutionVector};
use crate::rational::{frac, int, Q};

/// Integral input chain with entries in [−bound, bound].
pub fn integral_input(inst: &OhcpInstance, bound: i64, rng: &mut impl Rng) -> Vec<Q> {
    (0..inst.m()).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

/// Positive weights of the form a/b with a in 1..=20, b in 1..=4.
pub fn positive_weights(inst: &OhcpInstance, rng: &mut impl Rng) -> Vec<Q> {
    (0..inst.m()).map(|_| frac(rng.random_range(1..=20), rng.random_range(1..=4))).collect()
}

fn split(t: &Q, slack: &Q) -> (Q, Q) {
    if t.is_positive() {
        (t + slack, slack.clone())
    } else {
        (slack.clone(), slack - t)
    }
}

/// A feasible point c + B y for random half-integral y, with random common
/// slack on some opposite pairs so that many samples are not concise.
pub fn feasible_point(inst: &OhcpInstance, rng: &mut impl Rng) -> SolutionVector {
    let (m, n) = (inst.m(), inst.n());
    let y: Vec<Q> = (0..n)
        .map(|_| if rng.random_bool(0.5) { Q::zero() } else { frac(rng.random_range(-4..=4), 2) })
        .collect();
    let by = inst.boundary().mul_vec(&y);
    let x: Vec<Q> = inst.input().iter().zip(by).map(|(c, v)| c + v).collect();
    let mut slack = || if rng.random_bool(0.8) { Q::zero() } else { frac(rng.random_range(1..=3), 2) };
    let mut z = SolutionVector::zeros(m, n);
    for (i, t) in x.iter().enumerate() {
        let (a, b) = split(t, &slack());
        z.set(i, a);
        z.set(m + i, b);
    }
    for (k, t) in y.iter().enumerate() {
        let (a, b) = split(t, &slack());
        z.set(2 * m + k, a);
        z.set(2 * m + n + k, b);
    }
    z
}

/// A basic feasible point: the optimum for random positive weights.
pub fn basic_point(inst: &OhcpInstance, rng: &mut impl Rng) -> Result<SolutionVector, LpError> {
    let w = positive_weights(inst, rng);
    Ok(solve(&inst.with_weights(w)?)?.vertex)
}
