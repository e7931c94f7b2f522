//! Potential triangles, the exclusion property, and generic parameter choice
//! by margin-based rejection sampling.
//!
//! A cone `C` has two unit-area triangles that can be cut from it, one per
//! side. Iterating the cut along a bit string `s` (0 = left, 1 = right)
//! gives the potential triangle `C*_s`. A tiling has the exclusion property
//! when no two triangles among the realized ones and all potential ones are
//! congruent, except for potential triangles of one cone whose strings are
//! prefix-incomparable (they can never both be realized).
//!
//! Congruence is tested numerically: two triangles conflict when the L∞
//! distance of their signatures is below a margin `ε`. Generic choices are
//! made by drawing parameters at random until every non-exempt pair is at
//! least `ε` apart.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{feasible_leg_interval, initial_configuration};
use crate::geometry::{Cone, CongruenceSignature, GeometryError, Side, Triangle};
use crate::model::{ConeId, LiveCone, Tile, TriangleId};

/// Geometric draws allowed per attempt before the permissible split region
/// is declared empty.
pub const MAX_GEOMETRIC_DRAWS: u64 = 1_000_000;

/// Resolution of the envelope used for sampling split parameters.
const ENVELOPE_GRID: usize = 2048;

/// Uniform sampler over the permissible `(t, a)` region of a split, where
/// `a` is the angle between the direction towards `p` and the splitting
/// ray. `t` is drawn over the permissible range and accepted with
/// probability proportional to the length of its angle interval, measured
/// against a slightly inflated grid maximum.
struct SplitRegion<'a> {
    cone: &'a Cone,
    t_lo: f64,
    t_hi: f64,
    envelope: f64,
}

impl<'a> SplitRegion<'a> {
    fn new(cone: &'a Cone) -> Option<Self> {
        let (t_lo, t_hi) = cone.permissible_split_range()?;
        let peak = (0..=ENVELOPE_GRID)
            .filter_map(|i| {
                let t = t_lo + (t_hi - t_lo) * i as f64 / ENVELOPE_GRID as f64;
                cone.permissible_split_angles(t).map(|(lo, hi)| hi - lo)
            })
            .fold(0.0, f64::max);
        (peak > 0.0).then_some(SplitRegion {
            cone,
            t_lo,
            t_hi,
            envelope: 1.05 * peak,
        })
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(f64, f64)> {
        let t = self.t_lo + (self.t_hi - self.t_lo) * rng.gen::<f64>();
        let u = self.envelope * rng.gen::<f64>();
        let (lo, hi) = self.cone.permissible_split_angles(t)?;
        if u >= hi - lo {
            return None;
        }
        let a = lo + (hi - lo) * rng.gen::<f64>();
        Some((t, self.cone.split_direction(a)))
    }
}

/// A finite left/right cut sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<Side>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sides(&self) -> &[Side] {
        &self.0
    }

    pub fn child(&self, side: Side) -> BitString {
        let mut bits = self.0.clone();
        bits.push(side);
        BitString(bits)
    }

    /// Initial-segment test; every string is a prefix of itself.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Whether one of the two strings is an initial segment of the other.
    pub fn comparable(&self, other: &BitString) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }
}

impl From<&[Side]> for BitString {
    fn from(sides: &[Side]) -> Self {
        BitString(sides.to_vec())
    }
}

impl std::str::FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Side::Left),
                '1' => Ok(Side::Right),
                other => Err(format!("invalid bit {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for side in &self.0 {
            write!(f, "{}", side.bit())?;
        }
        Ok(())
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTriangle {
    pub owner: ConeId,
    pub string: BitString,
    pub triangle: Triangle,
}

/// All `C*_s` for nonempty `s` of length at most `depth`, shortest strings
/// first and lexicographic within a length. There are `2^(depth+1) - 2`.
pub fn potential_triangles(
    owner: ConeId,
    cone: &Cone,
    depth: usize,
) -> Result<Vec<PotentialTriangle>, GeometryError> {
    let mut out = Vec::with_capacity((1usize << (depth + 1)).saturating_sub(2));
    let mut frontier = vec![(BitString::new(), *cone)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (string, cone) in &frontier {
            for side in [Side::Left, Side::Right] {
                let (triangle, residual) = cone.cut(side)?;
                let string = string.child(side);
                out.push(PotentialTriangle {
                    owner,
                    string: string.clone(),
                    triangle,
                });
                next.push((string, residual));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// A realized triangle or a potential triangle of a live cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TriangleRef {
    Realized { id: TriangleId },
    Potential { cone: ConeId, string: BitString },
}

impl fmt::Display for TriangleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleRef::Realized { id } => write!(f, "{id}"),
            TriangleRef::Potential { cone, string } => write!(f, "{cone}*{string}"),
        }
    }
}

/// Conflict taxonomy. `TypeI`..`TypeIII` follow the three ways a split can
/// create a congruent pair: a new potential triangle against the rest of the
/// tiling, two prefix-related potential triangles of one cone, and potential
/// triangles of the two halves of the split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConflictKind {
    #[serde(rename = "realized-realized")]
    RealizedRealized,
    #[serde(rename = "type-i")]
    TypeI,
    #[serde(rename = "type-ii")]
    TypeII,
    #[serde(rename = "type-iii")]
    TypeIII,
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictKind::RealizedRealized => "realized-realized",
            ConflictKind::TypeI => "type-i",
            ConflictKind::TypeII => "type-ii",
            ConflictKind::TypeIII => "type-iii",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conflict {
    pub kind: ConflictKind,
    pub first: TriangleRef,
    pub second: TriangleRef,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConflictReport {
    pub conflicts: Vec<Conflict>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.conflicts.len()
    }

    pub fn kinds(&self) -> BTreeSet<ConflictKind> {
        self.conflicts.iter().map(|c| c.kind).collect()
    }

    /// Smallest signature distance among the reported pairs.
    pub fn min_distance(&self) -> Option<f64> {
        self.conflicts.iter().map(|c| c.distance).min_by(f64::total_cmp)
    }
}

/// Kind of a close pair, or `None` when the pair is exempt.
/// `split` names the two halves of the most recent split, if any.
pub fn classify(
    a: &TriangleRef,
    b: &TriangleRef,
    split: Option<(ConeId, ConeId)>,
) -> Option<ConflictKind> {
    use TriangleRef::*;
    match (a, b) {
        (Realized { .. }, Realized { .. }) => Some(ConflictKind::RealizedRealized),
        (Potential { cone: ca, string: sa }, Potential { cone: cb, string: sb }) if ca == cb => {
            sa.comparable(sb).then_some(ConflictKind::TypeII)
        }
        (Potential { cone: ca, .. }, Potential { cone: cb, .. })
            if split.is_some_and(|(d, e)| (*ca, *cb) == (d, e) || (*ca, *cb) == (e, d)) =>
        {
            Some(ConflictKind::TypeIII)
        }
        _ => Some(ConflictKind::TypeI),
    }
}

/// Signatures sorted by shortest side, for window queries.
#[derive(Debug, Clone, Default)]
pub struct SignatureIndex {
    entries: Vec<(CongruenceSignature, TriangleRef)>,
}

impl SignatureIndex {
    pub fn new(mut entries: Vec<(CongruenceSignature, TriangleRef)>) -> Self {
        entries.sort_by(|a, b| a.0.sides[0].total_cmp(&b.0.sides[0]).then_with(|| a.1.cmp(&b.1)));
        SignatureIndex { entries }
    }

    pub fn from_tiling<'a>(
        realized: &[Tile],
        potentials: impl IntoIterator<Item = &'a PotentialTriangle>,
    ) -> Self {
        let mut entries: Vec<_> = realized
            .iter()
            .map(|t| (t.triangle.signature(), TriangleRef::Realized { id: t.id }))
            .collect();
        entries.extend(potentials.into_iter().map(potential_entry));
        SignatureIndex::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries whose signature lies strictly within `margin` of `sig`.
    pub fn near<'a>(
        &'a self,
        sig: &'a CongruenceSignature,
        margin: f64,
    ) -> impl Iterator<Item = (&'a TriangleRef, f64)> + 'a {
        let lo = sig.sides[0] - margin;
        let start = self.entries.partition_point(|(s, _)| s.sides[0] <= lo);
        self.entries[start..]
            .iter()
            .take_while(move |(s, _)| s.sides[0] < sig.sides[0] + margin)
            .filter_map(move |(s, r)| {
                let d = s.distance(sig);
                (d < margin).then_some((r, d))
            })
    }

    /// Every close, non-exempt pair within the index.
    pub fn self_conflicts(&self, margin: f64, split: Option<(ConeId, ConeId)>) -> ConflictReport {
        let mut conflicts = Vec::new();
        for (i, (si, ri)) in self.entries.iter().enumerate() {
            for (sj, rj) in &self.entries[i + 1..] {
                if sj.sides[0] - si.sides[0] >= margin {
                    break;
                }
                let d = si.distance(sj);
                if d < margin {
                    if let Some(kind) = classify(ri, rj, split) {
                        conflicts.push(make_conflict(kind, ri, rj, d));
                    }
                }
            }
        }
        finish(conflicts)
    }
}

fn potential_entry(p: &PotentialTriangle) -> (CongruenceSignature, TriangleRef) {
    (
        p.triangle.signature(),
        TriangleRef::Potential {
            cone: p.owner,
            string: p.string.clone(),
        },
    )
}

fn make_conflict(kind: ConflictKind, a: &TriangleRef, b: &TriangleRef, distance: f64) -> Conflict {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    Conflict {
        kind,
        first: first.clone(),
        second: second.clone(),
        distance,
    }
}

fn finish(mut conflicts: Vec<Conflict>) -> ConflictReport {
    conflicts.sort_by(|a, b| (&a.first, &a.second).cmp(&(&b.first, &b.second)));
    ConflictReport { conflicts }
}

/// Checks the exclusion property of a tiling at lookahead `depth` and
/// margin `margin`. Cross-cone potential pairs are reported as type (i).
pub fn exclusion_check(
    realized: &[Tile],
    cones: &[LiveCone],
    depth: usize,
    margin: f64,
) -> Result<ConflictReport, GeometryError> {
    exclusion_check_after_split(realized, cones, depth, margin, None)
}

/// [`exclusion_check`] with the two halves of a split named, so that pairs
/// across them are reported as type (iii).
pub fn exclusion_check_after_split(
    realized: &[Tile],
    cones: &[LiveCone],
    depth: usize,
    margin: f64,
    split: Option<(ConeId, ConeId)>,
) -> Result<ConflictReport, GeometryError> {
    let mut potentials = Vec::new();
    for c in cones {
        potentials.extend(potential_triangles(c.id, &c.cone, depth)?);
    }
    Ok(SignatureIndex::from_tiling(realized, &potentials).self_conflicts(margin, split))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub depth: usize,
    pub margin: f64,
    pub max_attempts: u32,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("cone width {0} does not exceed 4; it must be cut, not split")]
    TooNarrowToSplit(f64),
    #[error("permissible split region appears empty ({draws} draws rejected)")]
    EmptyRegion { draws: u64 },
    #[error(
        "no generic sample in {attempts} attempts (best separation {best_separation:e}, blocking: {})",
        fmt_kinds(blocking)
    )]
    Exhausted {
        attempts: u32,
        best_separation: f64,
        blocking: BTreeSet<ConflictKind>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn fmt_kinds(kinds: &BTreeSet<ConflictKind>) -> String {
    kinds.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialSample {
    pub lengths: [f64; 3],
    pub attempts: u32,
}

/// Exclusion report of the Step-0 tiling built from the given leg lengths.
pub fn initial_exclusion(
    lengths: [f64; 3],
    depth: usize,
    margin: f64,
) -> Result<ConflictReport, GeometryError> {
    let (tiles, cones) = initial_configuration(lengths)?;
    exclusion_check(&tiles, &cones, depth, margin)
}

/// Draws the three Step-0 leg lengths uniformly from the feasible interval
/// until the initial tiling has the exclusion property.
pub fn sample_generic_initial<R: Rng + ?Sized>(
    rng: &mut R,
    config: &SamplerConfig,
) -> Result<InitialSample, SampleError> {
    let (lo, hi) = feasible_leg_interval();
    let mut best = f64::NEG_INFINITY;
    let mut blocking = BTreeSet::new();
    for attempt in 1..=config.max_attempts {
        let lengths = [0; 3].map(|_| rng.gen_range(lo..=hi));
        let report = initial_exclusion(lengths, config.depth, config.margin)?;
        match report.min_distance() {
            None => {
                return Ok(InitialSample {
                    lengths,
                    attempts: attempt,
                })
            }
            Some(d) => {
                best = best.max(d);
                blocking.extend(report.kinds());
            }
        }
    }
    Err(SampleError::Exhausted {
        attempts: config.max_attempts,
        best_separation: best,
        blocking,
    })
}

/// An accepted split.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSample {
    pub t: f64,
    pub phi: f64,
    pub left: Cone,
    pub right: Cone,
    pub left_potentials: Vec<PotentialTriangle>,
    pub right_potentials: Vec<PotentialTriangle>,
    /// Candidates that passed the width test and were checked for conflicts.
    pub attempts: u32,
    /// Raw `(t, φ)` draws, including those rejected geometrically.
    pub draws: u64,
}

/// Conflicts a candidate split would introduce. `context` holds everything
/// in the tiling except the cone being split.
pub fn split_conflicts(
    left: &[PotentialTriangle],
    right: &[PotentialTriangle],
    context: &SignatureIndex,
    margin: f64,
) -> ConflictReport {
    let mut conflicts = Vec::new();
    let new: Vec<_> = left.iter().chain(right).map(potential_entry).collect();
    for (sig, r) in &new {
        for (other, d) in context.near(sig, margin) {
            conflicts.push(make_conflict(ConflictKind::TypeI, r, other, d));
        }
    }
    let split = match (left.first(), right.first()) {
        (Some(l), Some(r)) => Some((l.owner, r.owner)),
        _ => None,
    };
    for (i, (si, ri)) in new.iter().enumerate() {
        for (sj, rj) in &new[i + 1..] {
            let d = si.distance(sj);
            if d < margin {
                if let Some(kind) = classify(ri, rj, split) {
                    conflicts.push(make_conflict(kind, ri, rj, d));
                }
            }
        }
    }
    finish(conflicts)
}

/// Draws `(t, φ)` uniformly from the open region of splits whose parts both
/// have width above 2, and returns the first draw whose potential triangles
/// at `config.depth` are at least `config.margin` away from everything else.
///
/// `ids` are the identifiers the two parts will carry.
pub fn sample_generic_split<R: Rng + ?Sized>(
    cone: &Cone,
    ids: (ConeId, ConeId),
    context: &SignatureIndex,
    rng: &mut R,
    config: &SamplerConfig,
) -> Result<SplitSample, SampleError> {
    let width = cone.width();
    if width <= 4.0 {
        return Err(SampleError::TooNarrowToSplit(width));
    }
    let region = SplitRegion::new(cone).ok_or(SampleError::EmptyRegion { draws: 0 })?;
    let mut draws = 0u64;
    let mut best = f64::NEG_INFINITY;
    let mut blocking = BTreeSet::new();
    for attempt in 1..=config.max_attempts {
        let mut rejected = 0u64;
        let (t, phi, left, right) = loop {
            if rejected >= MAX_GEOMETRIC_DRAWS {
                return Err(SampleError::EmptyRegion { draws: rejected });
            }
            rejected += 1;
            draws += 1;
            if let Some((t, phi)) = region.draw(rng) {
                if let Ok((l, r)) = cone.split(t, phi) {
                    break (t, phi, l, r);
                }
            }
        };
        let left_potentials = potential_triangles(ids.0, &left, config.depth)?;
        let right_potentials = potential_triangles(ids.1, &right, config.depth)?;
        let report = split_conflicts(&left_potentials, &right_potentials, context, config.margin);
        match report.min_distance() {
            None => {
                return Ok(SplitSample {
                    t,
                    phi,
                    left,
                    right,
                    left_potentials,
                    right_potentials,
                    attempts: attempt,
                    draws,
                })
            }
            Some(d) => {
                best = best.max(d);
                blocking.extend(report.kinds());
            }
        }
    }
    Err(SampleError::Exhausted {
        attempts: config.max_attempts,
        best_separation: best,
        blocking,
    })
}
