//! Shortening witnesses, desk-scale FFTP certification, and the cone-type census.
//!
//! A witness for a non-geodesic word `w` is a strictly shorter word `u` with the same
//! endpoint that fellow travels `w` within `k`. The synchronous search runs over the
//! layered product graph of states `(t, g)` with `d(g, w(t)) <= k`; the asynchronous
//! search layers states `(i, g)` by the length of `u` instead.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Word};
use crate::cayley::{Ball, PathTrace};
use crate::error::{Error, Result};
use crate::fellow::{async_distance, sync_distance, AsyncReport, SyncReport};
use crate::group::GroupSpec;

pub const DEFAULT_WORD_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TravelMode {
    #[default]
    Sync,
    Async,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftpWitness {
    pub original: Word,
    pub shortened: Word,
    pub k_used: usize,
    pub mode: TravelMode,
    /// Independent re-check of the fellow-traveler distance (sync mode).
    pub sync_check: Option<SyncReport>,
    /// Independent re-check of the matching distance (async mode).
    pub async_check: Option<AsyncReport>,
}

/// Outcome of a search that found no witness or a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shortening {
    Found(FftpWitness),
    NoWitness,
}

impl Shortening {
    pub fn witness(&self) -> Option<&FftpWitness> {
        match self {
            Shortening::Found(w) => Some(w),
            Shortening::NoWitness => None,
        }
    }
}

/// Points of `w` from the identity as ball vertices, failing if any lies outside
/// `B(radius - k)`.
fn safe_path(ball: &Ball, w: &Word, k: usize) -> Result<Vec<usize>> {
    let spec = ball.spec();
    spec.alphabet().check_word(w)?;
    if k > ball.radius() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds ball radius {}",
            ball.radius()
        )));
    }
    let limit = ball.radius() - k;
    let mut v = 0usize;
    let mut points = vec![0usize];
    for (t, &x) in w.letters().iter().enumerate() {
        v = match ball.neighbor(v, x) {
            Some(u) if ball.depth(u) <= limit => u,
            _ => {
                return Err(Error::OutOfBall {
                    radius: ball.radius(),
                    context: format!("w({}) of {} leaves B({limit})", t + 1, spec.format_word(w)),
                })
            }
        };
        points.push(v);
    }
    Ok(points)
}

struct Proximity<'a> {
    ball: &'a Ball,
    k: usize,
    cache: HashMap<(usize, usize), bool>,
}

impl<'a> Proximity<'a> {
    fn new(ball: &'a Ball, k: usize) -> Self {
        Proximity {
            ball,
            k,
            cache: HashMap::new(),
        }
    }

    fn near(&mut self, g: usize, h: usize) -> bool {
        if g == h {
            return true;
        }
        let (ball, k) = (self.ball, self.k);
        *self
            .cache
            .entry((g, h))
            .or_insert_with(|| ball.within(ball.element(g), ball.element(h), k))
    }
}

/// Shortest (then lexicographically least) word `u` with `ū = w̄`, `|u| < |w|` and
/// synchronous distance at most `k` from `w`.
pub fn find_shortening(ball: &Ball, w: &Word, k: usize) -> Result<Shortening> {
    let points = safe_path(ball, w, k)?;
    let n = w.len();
    let end = points[n];
    if ball.depth(end) == n {
        return Err(Error::AlreadyGeodesic(ball.spec().format_word(w)));
    }
    let letters: Vec<Letter> = ball.spec().alphabet().letters().collect();
    let mut near = Proximity::new(ball, k);

    // tail_ok[t]: d(w̄, w(s)) <= k for all s >= t
    let mut tail_ok = vec![true; n + 1];
    for t in (0..n).rev() {
        tail_ok[t] = tail_ok[t + 1] && near.near(end, points[t]);
    }

    let mut layers: Vec<HashSet<usize>> = vec![HashSet::from([0usize])];
    let mut accept_at = None;
    for t in 0..n {
        if tail_ok[t] && layers[t].contains(&end) {
            accept_at = Some(t);
            break;
        }
        if t + 1 == n {
            break;
        }
        let mut next = HashSet::new();
        for &g in &layers[t] {
            for &x in &letters {
                if let Some(h) = ball.neighbor(g, x) {
                    if !next.contains(&h) && near.near(h, points[t + 1]) {
                        next.insert(h);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let Some(len) = accept_at else {
        return Ok(Shortening::NoWitness);
    };

    // states of each layer that can still reach the endpoint at layer `len`
    let mut good: Vec<HashSet<usize>> = vec![HashSet::new(); len + 1];
    good[len].insert(end);
    for t in (0..len).rev() {
        let reach: HashSet<usize> = layers[t]
            .iter()
            .copied()
            .filter(|&g| {
                letters
                    .iter()
                    .any(|&x| matches!(ball.neighbor(g, x), Some(h) if good[t + 1].contains(&h)))
            })
            .collect();
        good[t] = reach;
    }
    let mut u = Vec::with_capacity(len);
    let mut g = 0usize;
    for t in 0..len {
        let (x, h) = letters
            .iter()
            .find_map(|&x| match ball.neighbor(g, x) {
                Some(h) if good[t + 1].contains(&h) => Some((x, h)),
                _ => None,
            })
            .expect("good layers are nonempty along a witness");
        u.push(x);
        g = h;
    }
    let shortened = Word(u);
    let spec = ball.spec();
    let check = sync_distance(
        ball,
        &PathTrace::from_identity(spec, w.clone())?,
        &PathTrace::from_identity(spec, shortened.clone())?,
    )?;
    debug_assert!(check.distance <= k);
    Ok(Shortening::Found(FftpWitness {
        original: w.clone(),
        shortened,
        k_used: k,
        mode: TravelMode::Sync,
        sync_check: Some(check),
        async_check: None,
    }))
}

/// Like [`find_shortening`], with asynchronous (monotone matching) fellow traveling.
pub fn find_shortening_async(ball: &Ball, w: &Word, k: usize) -> Result<Shortening> {
    let points = safe_path(ball, w, k)?;
    let n = w.len();
    let end = points[n];
    if ball.depth(end) == n {
        return Err(Error::AlreadyGeodesic(ball.spec().format_word(w)));
    }
    let letters: Vec<Letter> = ball.spec().alphabet().letters().collect();
    let mut near = Proximity::new(ball, k);

    let closure = |set: &mut HashSet<(usize, usize)>, near: &mut Proximity| {
        let mut stack: Vec<(usize, usize)> = set.iter().copied().collect();
        while let Some((i, g)) = stack.pop() {
            if i < n && near.near(g, points[i + 1]) && set.insert((i + 1, g)) {
                stack.push((i + 1, g));
            }
        }
    };
    let successors = |(i, g): (usize, usize), x: Letter, near: &mut Proximity| {
        let mut out = Vec::new();
        if let Some(h) = ball.neighbor(g, x) {
            for i2 in [i, i + 1] {
                if i2 <= n && near.near(h, points[i2]) {
                    out.push((i2, h));
                }
            }
        }
        out
    };

    let mut start = HashSet::from([(0usize, 0usize)]);
    closure(&mut start, &mut near);
    let mut layers = vec![start];
    let mut accept_at = None;
    for l in 0..n {
        if layers[l].contains(&(n, end)) {
            accept_at = Some(l);
            break;
        }
        if l + 1 == n {
            break;
        }
        let mut next = HashSet::new();
        for &s in &layers[l] {
            for &x in &letters {
                next.extend(successors(s, x, &mut near));
            }
        }
        closure(&mut next, &mut near);
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let Some(len) = accept_at else {
        return Ok(Shortening::NoWitness);
    };

    let mut good: Vec<HashSet<(usize, usize)>> = vec![HashSet::new(); len + 1];
    for i in 0..=n {
        // closure from (i, end) reaches (n, end)
        if (i..=n).all(|j| layers[len].contains(&(j, end))) {
            good[len].insert((i, end));
        }
    }
    for l in (0..len).rev() {
        let mut states: Vec<(usize, usize)> = layers[l].iter().copied().collect();
        states.sort_unstable_by(|a, b| b.cmp(a));
        let mut set = HashSet::new();
        for (i, g) in states {
            let via_letter = letters.iter().any(|&x| {
                successors((i, g), x, &mut near)
                    .iter()
                    .any(|s| good[l + 1].contains(s))
            });
            if via_letter || set.contains(&(i + 1, g)) {
                set.insert((i, g));
            }
        }
        good[l] = set;
    }
    let mut current = layers[0].clone();
    let mut g = 0usize;
    let mut u = Vec::with_capacity(len);
    for l in 0..len {
        let (x, h, next) = letters
            .iter()
            .find_map(|&x| {
                let h = ball.neighbor(g, x)?;
                let mut next: HashSet<(usize, usize)> = current
                    .iter()
                    .flat_map(|&s| successors(s, x, &mut near))
                    .collect();
                closure(&mut next, &mut near);
                next.iter()
                    .any(|s| good[l + 1].contains(s))
                    .then_some((x, h, next))
            })
            .expect("good layers are nonempty along a witness");
        u.push(x);
        g = h;
        current = next;
    }
    let shortened = Word(u);
    let spec = ball.spec();
    let check = async_distance(
        ball,
        &PathTrace::from_identity(spec, w.clone())?,
        &PathTrace::from_identity(spec, shortened.clone())?,
    )?;
    debug_assert!(check.distance <= k);
    Ok(Shortening::Found(FftpWitness {
        original: w.clone(),
        shortened,
        k_used: k,
        mode: TravelMode::Async,
        sync_check: None,
        async_check: Some(check),
    }))
}

pub fn find_shortening_with(
    ball: &Ball,
    w: &Word,
    k: usize,
    mode: TravelMode,
) -> Result<Shortening> {
    match mode {
        TravelMode::Sync => find_shortening(ball, w, k),
        TravelMode::Async => find_shortening_async(ball, w, k),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateStatus {
    Certified,
    Refuted { counterexample: Word },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftpCertificate {
    pub k: usize,
    pub max_word_len: usize,
    pub ball_radius: usize,
    pub mode: TravelMode,
    pub status: CertificateStatus,
    /// Non-geodesic words that were searched.
    pub words_checked: usize,
    /// Words whose path left `B(radius - k)`.
    pub words_skipped: usize,
}

impl FftpCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }

    pub fn counterexample(&self) -> Option<&Word> {
        match &self.status {
            CertificateStatus::Refuted { counterexample } => Some(counterexample),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub mode: TravelMode,
    pub word_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: TravelMode::Sync,
            word_cap: DEFAULT_WORD_CAP,
        }
    }
}

enum WordOutcome {
    Geodesic,
    Skipped,
    Witnessed,
    Refuted,
}

/// Builds `B(radius)` and certifies FFTP at `k` for every word of length `<= max_len`.
pub fn certify_fftp(
    spec: &GroupSpec,
    k: usize,
    max_len: usize,
    radius: usize,
) -> Result<FftpCertificate> {
    let ball = Ball::build(spec, radius)?;
    certify_fftp_in(&ball, k, max_len, CertifyOptions::default())
}

/// Certification against an existing ball. Words are taken in shortlex order, so a
/// refutation reports the shortest, then lexicographically least, failing word.
pub fn certify_fftp_in(
    ball: &Ball,
    k: usize,
    max_len: usize,
    options: CertifyOptions,
) -> Result<FftpCertificate> {
    if k > ball.radius() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds ball radius {}",
            ball.radius()
        )));
    }
    let alphabet = ball.spec().alphabet();
    let mut total = 0usize;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut status = CertificateStatus::Certified;
    for len in 0..=max_len {
        let count = alphabet.len().checked_pow(len as u32).unwrap_or(usize::MAX);
        total = total.saturating_add(count);
        if total > options.word_cap {
            return Err(Error::BudgetExceeded {
                what: "candidate word count",
                cap: options.word_cap,
            });
        }
        let words: Vec<Word> = alphabet.words_of_length(len).collect();
        let outcomes: Vec<WordOutcome> = words
            .par_iter()
            .map(|w| classify_word(ball, w, k, options.mode))
            .collect::<Result<_>>()?;
        let mut refuted = None;
        for (w, outcome) in words.iter().zip(&outcomes) {
            match outcome {
                WordOutcome::Geodesic => {}
                WordOutcome::Skipped => skipped += 1,
                WordOutcome::Witnessed => checked += 1,
                WordOutcome::Refuted => {
                    checked += 1;
                    if refuted.is_none() {
                        refuted = Some(w.clone());
                    }
                }
            }
        }
        if let Some(counterexample) = refuted {
            status = CertificateStatus::Refuted { counterexample };
            break;
        }
    }
    if status == CertificateStatus::Certified && skipped > 0 {
        status = CertificateStatus::Inconclusive {
            reason: format!(
                "{skipped} words left B({}) and were not checked",
                ball.radius() - k
            ),
        };
    }
    Ok(FftpCertificate {
        k,
        max_word_len: max_len,
        ball_radius: ball.radius(),
        mode: options.mode,
        status,
        words_checked: checked,
        words_skipped: skipped,
    })
}

fn classify_word(ball: &Ball, w: &Word, k: usize, mode: TravelMode) -> Result<WordOutcome> {
    let limit = ball.radius() - k;
    let mut v = 0usize;
    for &x in w.letters() {
        match ball.neighbor(v, x) {
            Some(u) if ball.depth(u) <= limit => v = u,
            _ => return Ok(WordOutcome::Skipped),
        }
    }
    if ball.depth(v) == w.len() {
        return Ok(WordOutcome::Geodesic);
    }
    Ok(match find_shortening_with(ball, w, k, mode)? {
        Shortening::Found(_) => WordOutcome::Witnessed,
        Shortening::NoWitness => WordOutcome::Refuted,
    })
}

/// Smallest `k <= k_max` certified at `(max_len, radius)`, scanning upward.
pub fn min_fftp_constant(
    spec: &GroupSpec,
    max_len: usize,
    radius: usize,
    k_max: usize,
) -> Result<Option<usize>> {
    if radius < max_len + k_max {
        return Err(Error::Precondition(format!(
            "radius {radius} < max_len + k_max = {}",
            max_len + k_max
        )));
    }
    let ball = Ball::build(spec, radius)?;
    min_fftp_constant_in(&ball, max_len, k_max, CertifyOptions::default())
}

pub fn min_fftp_constant_in(
    ball: &Ball,
    max_len: usize,
    k_max: usize,
    options: CertifyOptions,
) -> Result<Option<usize>> {
    for k in 0..=k_max {
        if certify_fftp_in(ball, k, max_len, options)?.is_certified() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cor3Check {
    pub k_async: usize,
    pub k_sync: usize,
    pub async_certificate: FftpCertificate,
    pub sync_certificate: FftpCertificate,
    /// Synchronous FFTP certified at `4 * k_async`.
    pub holds: bool,
}

/// Given asynchronous FFTP at `k_async`, checks synchronous FFTP at `4 * k_async`
/// for the same word length bound.
pub fn check_cor3(
    spec: &GroupSpec,
    k_async: usize,
    max_len: usize,
    radius: usize,
) -> Result<Cor3Check> {
    if k_async == 0 {
        return Err(Error::ProvisoViolated(0));
    }
    let k_sync = 4 * k_async;
    if radius < max_len + k_sync {
        return Err(Error::Precondition(format!(
            "radius {radius} < max_len + 4k = {}",
            max_len + k_sync
        )));
    }
    let ball = Ball::build(spec, radius)?;
    let async_certificate = certify_fftp_in(
        &ball,
        k_async,
        max_len,
        CertifyOptions {
            mode: TravelMode::Async,
            ..CertifyOptions::default()
        },
    )?;
    if !async_certificate.is_certified() {
        return Err(Error::NotCertified);
    }
    let sync_certificate = certify_fftp_in(&ball, k_sync, max_len, CertifyOptions::default())?;
    Ok(Cor3Check {
        k_async,
        k_sync,
        holds: sync_certificate.is_certified(),
        async_certificate,
        sync_certificate,
    })
}

/// Partition of ball vertices by truncated cone type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCensus {
    pub depth: usize,
    /// Vertices with `d(1, g) <= max_distance` are classified.
    pub max_distance: usize,
    /// Member vertex indices per class; classes ordered by first member in BFS order.
    pub classes: Vec<Vec<usize>>,
    /// Class of each ball vertex, `None` outside the classified region.
    pub class_of: Vec<Option<usize>>,
    /// `transitions[c][x]`: class of `g·x` for geodesic extensions, where all classified
    /// successors of members of `c` agree.
    pub transitions: Vec<Vec<Option<usize>>>,
}

impl ConeCensus {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn to_dot(&self, spec: &GroupSpec) -> String {
        let al = spec.alphabet();
        let mut s = String::from("digraph cones {\n");
        for (c, members) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "  c{c} [label=\"{c} ({} vertices)\"];", members.len());
        }
        for (c, row) in self.transitions.iter().enumerate() {
            for (x, target) in row.iter().enumerate() {
                if let Some(t) = target {
                    let _ = writeln!(
                        s,
                        "  c{c} -> c{t} [label=\"{}\"];",
                        al.name(Letter(x as u16))
                    );
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Cone types truncated at `depth`, by iterated partition refinement: two vertices
/// agree at depth `d` iff they have the same geodesically extending letters and the
/// corresponding successors agree at depth `d - 1`.
pub fn cone_census(ball: &Ball, depth: usize) -> Result<ConeCensus> {
    if depth > ball.radius() {
        return Err(Error::OutOfBall {
            radius: ball.radius(),
            context: format!("census depth {depth} exceeds the ball radius"),
        });
    }
    let letters: Vec<Letter> = ball.spec().alphabet().letters().collect();
    let radius = ball.radius();
    let classified = |d: usize| (0..ball.len()).take_while(move |&v| ball.depth(v) + d <= radius);
    let mut class: Vec<Option<usize>> = (0..ball.len())
        .map(|v| (ball.depth(v) <= radius).then_some(0))
        .collect();
    for d in 1..=depth {
        let mut ids: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        let mut next = vec![None; ball.len()];
        for v in classified(d) {
            let sig: Vec<Option<usize>> = letters
                .iter()
                .map(|&x| {
                    let u = ball.neighbor(v, x)?;
                    if ball.depth(u) == ball.depth(v) + 1 {
                        class[u]
                    } else {
                        None
                    }
                })
                .collect();
            let fresh = ids.len();
            next[v] = Some(*ids.entry(sig).or_insert(fresh));
        }
        class = next;
    }
    let max_distance = radius - depth;
    let count = class.iter().flatten().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (v, c) in class.iter().enumerate() {
        if let Some(c) = c {
            classes[*c].push(v);
        }
    }
    let mut transitions = vec![vec![None; letters.len()]; count];
    for (c, members) in classes.iter().enumerate() {
        for &x in &letters {
            // successor classes of members whose extension by x is geodesic and classified
            let mut targets = members.iter().filter_map(|&v| {
                let u = ball.neighbor(v, x)?;
                (ball.depth(u) == ball.depth(v) + 1)
                    .then_some(class[u])
                    .flatten()
            });
            if let Some(first) = targets.next() {
                if targets.all(|t| t == first) {
                    transitions[c][x.index()] = Some(first);
                }
            }
        }
    }
    Ok(ConeCensus {
        depth,
        max_distance,
        classes,
        class_of: class,
        transitions,
    })
}
