//! Synchronous and asynchronous fellow-traveler distances between paths.
//!
//! The asynchronous reparametrization is discretized to a monotone lattice matching
//! through `{0..|w|} x {0..|u|}` with steps `(1,1)`, `(1,0)`, `(0,1)`; its cost is the
//! bottleneck (maximum) distance along the matching, as in the discrete Fréchet
//! distance.

use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::cayley::{Ball, PathTrace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyncReport {
    pub distance: usize,
    /// Earliest `t` attaining the maximum.
    pub witness_time: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsyncReport {
    pub distance: usize,
    /// Lattice points `(i, j)` from `(0, 0)` to `(|w|, |u|)`.
    pub matching: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Check {
    pub k_async: usize,
    pub k_sync: usize,
    /// `k_sync <= 2 * k_async`; a false value indicates a bug.
    pub bound_holds: bool,
}

/// `max_t d(w(t), u(t))` over `0 <= t <= max(|w|, |u|)`, tails held at the endpoints.
pub fn sync_distance(ball: &Ball, w: &PathTrace, u: &PathTrace) -> Result<SyncReport> {
    let horizon = w.len().max(u.len());
    let mut best = SyncReport {
        distance: 0,
        witness_time: 0,
    };
    for t in 0..=horizon {
        let d = ball.distance(w.at(t), u.at(t)).map_err(|e| match e {
            Error::OutOfBall { radius, context } => Error::OutOfBall {
                radius,
                context: format!("t = {t}: {context}"),
            },
            other => other,
        })?;
        if d > best.distance {
            best = SyncReport {
                distance: d,
                witness_time: t,
            };
        }
    }
    Ok(best)
}

const STEPS: [(usize, usize); 3] = [(1, 1), (1, 0), (0, 1)];

/// Minimal bottleneck over monotone matchings, by dynamic programming over the grid.
///
/// Pairs whose difference leaves the ball count as `radius + 1`; the result is exact
/// unless the optimum itself exceeds the radius, which is reported as `OutOfBall`.
pub fn async_distance(ball: &Ball, w: &PathTrace, u: &PathTrace) -> Result<AsyncReport> {
    let (n, m) = (w.len(), u.len());
    let far = ball.radius() + 1;
    let cols = m + 1;
    let mut cost = vec![0usize; (n + 1) * cols];
    for i in 0..=n {
        for j in 0..=m {
            cost[i * cols + j] = ball.distance(&w.points()[i], &u.points()[j]).unwrap_or(far);
        }
    }
    // best[i][j]: optimal bottleneck of a matching from (i, j) to (n, m)
    let mut best = vec![usize::MAX; (n + 1) * cols];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let here = cost[i * cols + j];
            let onward = STEPS
                .iter()
                .filter(|(di, dj)| i + di <= n && j + dj <= m)
                .map(|(di, dj)| best[(i + di) * cols + j + dj])
                .min();
            best[i * cols + j] = match onward {
                Some(o) => here.max(o),
                None => here,
            };
        }
    }
    let k = best[0];
    if k > ball.radius() {
        return Err(Error::OutOfBall {
            radius: ball.radius(),
            context: "asynchronous matching needs distances beyond the ball".into(),
        });
    }
    let mut matching = vec![(0, 0)];
    let (mut i, mut j) = (0, 0);
    while (i, j) != (n, m) {
        let (di, dj) = STEPS
            .iter()
            .copied()
            .find(|(di, dj)| i + di <= n && j + dj <= m && best[(i + di) * cols + j + dj] <= k)
            .expect("an optimal continuation exists");
        i += di;
        j += dj;
        matching.push((i, j));
    }
    Ok(AsyncReport {
        distance: k,
        matching,
    })
}

/// Checks that two geodesics from the identity which asynchronously `k`-fellow travel
/// also synchronously `2k`-fellow travel.
pub fn check_async_to_sync(ball: &Ball, w: &Word, u: &Word) -> Result<Lemma2Check> {
    let spec = ball.spec();
    for word in [w, u] {
        if !ball.is_geodesic(word)? {
            return Err(Error::NotGeodesic(spec.format_word(word)));
        }
    }
    let wt = PathTrace::from_identity(spec, w.clone())?;
    let ut = PathTrace::from_identity(spec, u.clone())?;
    let k_async = async_distance(ball, &wt, &ut)?.distance;
    let k_sync = sync_distance(ball, &wt, &ut)?.distance;
    Ok(Lemma2Check {
        k_async,
        k_sync,
        bound_holds: k_sync <= 2 * k_async,
    })
}
