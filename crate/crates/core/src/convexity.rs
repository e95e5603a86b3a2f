//! Almost-convexity constants `C(i, n)` measured inside a ball.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::fftp::FftpCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcReport {
    pub i: usize,
    pub n: usize,
    /// Largest in-ball distance between sphere points at most `i` apart; `None` if some
    /// pair has no path inside `B(n)`.
    pub c_val: Option<usize>,
    /// Vertex indices `(g, g')` attaining `c_val`, smaller index first.
    pub witness_pair: Option<(usize, usize)>,
}

/// BFS distances from `source` using only vertices of `B(n)`.
fn in_ball_distances(ball: &Ball, source: usize, n: usize) -> Vec<u32> {
    let letters: Vec<_> = ball.spec().alphabet().letters().collect();
    let limit = ball.sphere(n).end;
    let mut dist = vec![u32::MAX; limit];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &x in &letters {
            if let Some(u) = ball.neighbor(v, x) {
                if u < limit && dist[u] == u32::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    dist
}

/// `C(i, n)`: over pairs `g, g' ∈ S(n)` with `d(g, g') <= i`, the maximum length of a
/// shortest path from `g` to `g'` inside `B(n)`.
pub fn ac_constant(ball: &Ball, i: usize, n: usize) -> Result<AcReport> {
    if i == 0 {
        return Err(Error::Precondition("almost convexity needs i >= 1".into()));
    }
    if n > ball.radius() || i > ball.radius() {
        return Err(Error::OutOfBall {
            radius: ball.radius(),
            context: format!("C({i}, {n}) needs a ball of radius {}", n.max(i)),
        });
    }
    let spec = ball.spec();
    let short_range = ball.sphere(0).start..ball.sphere(i).end;
    let sphere = ball.sphere(n);
    // unreachable pairs rank above every finite distance
    let per_source: Vec<Option<(usize, (usize, usize))>> = sphere
        .into_par_iter()
        .map(|g| {
            let dist = in_ball_distances(ball, g, n);
            let mut best: Option<(usize, (usize, usize))> = None;
            for h in short_range.clone() {
                let target = spec.product(ball.element(g), ball.element(h));
                let Some(t) = ball.index_of(&target) else {
                    continue;
                };
                if ball.depth(t) != n {
                    continue;
                }
                let key = if dist[t] == u32::MAX {
                    usize::MAX
                } else {
                    dist[t] as usize
                };
                if best.map_or(true, |(b, _)| key > b) {
                    best = Some((key, (g.min(t), g.max(t))));
                }
            }
            best
        })
        .collect();
    let best = per_source.into_iter().flatten().fold(
        None,
        |acc: Option<(usize, (usize, usize))>, cand| match acc {
            Some((b, _)) if b >= cand.0 => acc,
            _ => Some(cand),
        },
    );
    let report = match best {
        Some((key, pair)) => AcReport {
            i,
            n,
            c_val: (key != usize::MAX).then_some(key),
            witness_pair: Some(pair),
        },
        None => AcReport {
            i,
            n,
            c_val: Some(0),
            witness_pair: None,
        },
    };
    Ok(report)
}

/// Checks `C(2, n) <= 3k` against a certificate at scale `max_word_len >= n + 2`.
pub fn check_prop_ac(certificate: &FftpCertificate, ac: &AcReport) -> Result<bool> {
    if !certificate.is_certified() {
        return Err(Error::NotCertified);
    }
    if ac.i != 2 {
        return Err(Error::Precondition(format!(
            "expected i = 2, got i = {}",
            ac.i
        )));
    }
    if ac.n > 0 && certificate.max_word_len < ac.n + 2 {
        return Err(Error::ScaleMismatch {
            certified: certificate.max_word_len,
            required: ac.n + 2,
        });
    }
    Ok(matches!(ac.c_val, Some(c) if c <= 3 * certificate.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fftp::{CertificateStatus, TravelMode};
    use crate::group::GroupSpec;

    fn certificate(k: usize, len: usize) -> FftpCertificate {
        FftpCertificate {
            k,
            max_word_len: len,
            ball_radius: len + k,
            mode: TravelMode::Sync,
            status: CertificateStatus::Certified,
            words_checked: 0,
            words_skipped: 0,
        }
    }

    #[test]
    fn trivial_sphere() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 3).unwrap();
        let report = ac_constant(&ball, 2, 0).unwrap();
        assert_eq!(report.c_val, Some(0));
        assert_eq!(report.witness_pair, Some((0, 0)));
        assert!(check_prop_ac(&certificate(2, 6), &report).unwrap());
    }

    #[test]
    fn z2_radius_three() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 3).unwrap();
        let report = ac_constant(&ball, 2, 3).unwrap();
        assert_eq!(report.c_val, Some(2));
        let (g, h) = report.witness_pair.unwrap();
        assert_eq!((ball.depth(g), ball.depth(h)), (3, 3));
        assert_eq!(ball.distance(ball.element(g), ball.element(h)).unwrap(), 2);
        assert!(check_prop_ac(&certificate(2, 6), &report).unwrap());
    }

    #[test]
    fn scale_and_status_checks() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 5).unwrap();
        let report = ac_constant(&ball, 2, 5).unwrap();
        assert_eq!(
            check_prop_ac(&certificate(2, 6), &report),
            Err(Error::ScaleMismatch {
                certified: 6,
                required: 7
            })
        );
        let mut refuted = certificate(2, 8);
        refuted.status = CertificateStatus::Inconclusive { reason: "x".into() };
        assert_eq!(check_prop_ac(&refuted, &report), Err(Error::NotCertified));
        let wrong_i = ac_constant(&ball, 1, 3).unwrap();
        assert!(check_prop_ac(&certificate(2, 8), &wrong_i).is_err());
        assert!(ac_constant(&ball, 0, 3).is_err());
        assert!(ac_constant(&ball, 2, 6).is_err());
    }
}
