//! Quotient-evidence segmentation: affine where every window holds the
//! quotient 1/4, jump where the finest windows approach the sharp constant
//! 1/2, constant where the variation vanishes, other elsewhere.

use serde::{Deserialize, Serialize};

use crate::calculus::QuotientMap;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentClass {
    Affine,
    Jump,
    Constant,
    Other,
}

/// Fitted parameters of a classified segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SegmentParams {
    Affine { slope: f64, intercept: f64 },
    Jump { location: f64, left_value: f64, right_value: f64 },
    Constant { value: f64 },
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub interval: Interval,
    pub class: SegmentClass,
    pub params: SegmentParams,
    /// Largest deviation of the supporting quotients from the class target
    /// (1/4 for affine, 1/2 for jump, 1/4 reference otherwise).
    pub max_quotient_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentationReport {
    pub segments: Vec<Segment>,
}

/// Thresholds for [`classify_segments_with`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyConfig {
    /// `|Q - 1/4| <= affine_tol` at every supporting window for the affine
    /// class.
    pub affine_tol: f64,
    /// `Q >= 1/2 - jump_tol` at the two finest scales for the jump class.
    /// Looser than `affine_tol` by default: a stride-quantized window
    /// center generally misses the jump by up to half a stride, which
    /// already costs `2 (stride / 2 scale)^2` of quotient.
    pub jump_tol: f64,
    /// Variation below this is treated as zero (constant windows).
    pub tv_tol: f64,
    /// An affine segment must be supported by at least this many distinct
    /// scales (capped at the number of scales in the map).
    pub min_scales: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self { affine_tol: 1e-3, jump_tol: 0.05, tv_tol: 1e-12, min_scales: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Vote {
    Constant,
    Affine,
    Jump,
    Other,
    None,
}

struct CenterEvidence {
    center: f64,
    vote: Vote,
    /// scales of the windows that supported the vote
    scales: Vec<f64>,
    max_affine_dev: f64,
    max_jump_dev: f64,
}

/// Classify with the default thresholds, `tol` overriding the affine one.
pub fn classify_segments(f: &Signal, map: &QuotientMap, tol: f64) -> Result<SegmentationReport> {
    classify_segments_with(f, map, ClassifyConfig { affine_tol: tol, ..Default::default() })
}

/// Segment the domain of `f` from the evidence in `map`.
///
/// Per window center: constant when every window there carries zero
/// variation; jump when the two finest windows reach the sharp constant;
/// affine when every window holds 1/4 within tolerance; other otherwise.
/// Runs of equal votes merge into segments tiling the domain, a run of
/// affine votes must cover `min_scales` distinct scales to qualify, and an
/// affine run whose endpoint values agree collapses to constant (equal
/// endpoint values force constancy for quotient-1/4 signals).
pub fn classify_segments_with(
    f: &Signal,
    map: &QuotientMap,
    cfg: ClassifyConfig,
) -> Result<SegmentationReport> {
    if map.entries.is_empty() || map.position_grid.is_empty() {
        return Err(Error::EmptyMap);
    }
    let domain = f.domain();
    let n_scales_in_map = map.scale_grid.len();
    let need_scales = cfg.min_scales.min(n_scales_in_map).max(1);

    let mut evidence: Vec<CenterEvidence> = Vec::with_capacity(map.position_grid.len());
    for &c in &map.position_grid {
        let entries = map.at_center(c);
        if entries.is_empty() {
            evidence.push(CenterEvidence {
                center: c,
                vote: Vote::None,
                scales: Vec::new(),
                max_affine_dev: 0.0,
                max_jump_dev: 0.0,
            });
            continue;
        }
        let scales: Vec<f64> = entries.iter().map(|e| e.interval.len()).collect();
        let all_flat = entries.iter().all(|e| e.total_variation <= cfg.tv_tol);
        // jump evidence must come from the two finest scales present
        let finest: Vec<_> = entries.iter().take(2).collect();
        let is_jump = !all_flat
            && finest.len() >= 2.min(n_scales_in_map)
            && finest.iter().all(|e| {
                e.quotient.is_some_and(|q| q >= 0.5 - cfg.jump_tol)
            });
        let all_quarter = entries
            .iter()
            .all(|e| e.quotient.is_some_and(|q| (q - 0.25).abs() <= cfg.affine_tol));
        let vote = if all_flat {
            Vote::Constant
        } else if is_jump {
            Vote::Jump
        } else if all_quarter {
            Vote::Affine
        } else {
            Vote::Other
        };
        let max_affine_dev = entries
            .iter()
            .filter_map(|e| e.quotient.map(|q| (q - 0.25).abs()))
            .fold(0.0, f64::max);
        let max_jump_dev = finest
            .iter()
            .filter_map(|e| e.quotient.map(|q| (q - 0.5).abs()))
            .fold(0.0, f64::max);
        evidence.push(CenterEvidence { center: c, vote, scales, max_affine_dev, max_jump_dev });
    }

    // votes -> runs of equal class
    let mut runs: Vec<(Vote, usize, usize)> = Vec::new();
    for (idx, ev) in evidence.iter().enumerate() {
        if ev.vote == Vote::None {
            continue;
        }
        match runs.last_mut() {
            Some((vote, _, end)) if *vote == ev.vote && evidence[*end..idx].iter().all(|e| e.vote == ev.vote || e.vote == Vote::None) => {
                *end = idx;
            }
            _ => runs.push((ev.vote, idx, idx)),
        }
    }
    if runs.is_empty() {
        return Err(Error::EmptyMap);
    }

    // demote under-supported affine runs, collapse flat affine runs
    let mut classed: Vec<(SegmentClass, usize, usize)> = Vec::with_capacity(runs.len());
    for &(vote, start, end) in &runs {
        let class = match vote {
            Vote::Constant => SegmentClass::Constant,
            Vote::Jump => SegmentClass::Jump,
            Vote::Other | Vote::None => SegmentClass::Other,
            Vote::Affine => {
                let mut scales: Vec<f64> = evidence[start..=end]
                    .iter()
                    .flat_map(|e| e.scales.iter().copied())
                    .collect();
                scales.sort_by(|a, b| a.partial_cmp(b).unwrap());
                scales.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (1.0 + b.abs()));
                if scales.len() < need_scales {
                    SegmentClass::Other
                } else {
                    let lo = evidence[start].center;
                    let hi = evidence[end].center;
                    let va = f.eval(lo)?;
                    let vb = f.eval(hi)?;
                    let span = 1.0 + va.abs().max(vb.abs());
                    if (va - vb).abs() <= 1e-9 * span && hi > lo {
                        SegmentClass::Constant
                    } else {
                        SegmentClass::Affine
                    }
                }
            }
        };
        classed.push((class, start, end));
    }

    // merge adjacent runs that ended up in the same class
    let mut merged: Vec<(SegmentClass, usize, usize)> = Vec::new();
    for (class, start, end) in classed {
        match merged.last_mut() {
            Some((c, _, e)) if *c == class => *e = end,
            _ => merged.push((class, start, end)),
        }
    }

    // Windows overlapping a feature boundary satisfy no class; they form
    // thin `other` runs no wider than the coarsest scale flanking the
    // feature. Those slivers belong to their neighbours, split down the
    // middle; `other` runs wider than the coarsest window stay as genuine
    // unclassified regions.
    let coarsest = map.scale_grid.last().copied().unwrap_or(0.0);
    let absorbed = {
        let mut out: Vec<(SegmentClass, usize, usize)> = Vec::new();
        for k in 0..merged.len() {
            let (class, start, end) = merged[k];
            let span = evidence[end].center - evidence[start].center;
            let prev_ok = out.last().is_some_and(|r: &(SegmentClass, usize, usize)| {
                r.0 != SegmentClass::Other
            });
            let next_ok = k + 1 < merged.len() && merged[k + 1].0 != SegmentClass::Other;
            if class == SegmentClass::Other && span <= coarsest && (prev_ok || next_ok) {
                let prev_jump = out.last().is_some_and(|r| r.0 == SegmentClass::Jump);
                let next_jump = next_ok && merged[k + 1].0 == SegmentClass::Jump;
                if prev_ok && next_ok {
                    if prev_jump && !next_jump {
                        // a jump is a point: its flanking sliver belongs to
                        // the region on the other side
                        merged[k + 1].1 = start;
                    } else if next_jump && !prev_jump {
                        if let Some(last) = out.last_mut() {
                            last.2 = end;
                        }
                    } else {
                        let mid = (start + end) / 2;
                        if let Some(last) = out.last_mut() {
                            last.2 = mid;
                        }
                        merged[k + 1].1 = (mid + 1).min(end);
                    }
                } else if prev_ok {
                    if let Some(last) = out.last_mut() {
                        last.2 = end;
                    }
                } else {
                    merged[k + 1].1 = start;
                }
                continue;
            }
            out.push((class, start, end));
        }
        out
    };
    let mut merged: Vec<(SegmentClass, usize, usize)> = Vec::new();
    for (class, start, end) in absorbed {
        match merged.last_mut() {
            Some((c, _, e)) if *c == class => *e = end,
            _ => merged.push((class, start, end)),
        }
    }
    if merged.is_empty() {
        return Err(Error::EmptyMap);
    }

    // segment boundaries at midpoints between neighbouring run edges
    let mut segments = Vec::with_capacity(merged.len());
    for (k, &(class, start, end)) in merged.iter().enumerate() {
        let lo = if k == 0 {
            domain.lo()
        } else {
            0.5 * (evidence[merged[k - 1].2].center + evidence[start].center)
        };
        let hi = if k + 1 == merged.len() {
            domain.hi()
        } else {
            0.5 * (evidence[end].center + evidence[merged[k + 1].1].center)
        };
        if hi <= lo {
            continue;
        }
        let interval = Interval::new(lo, hi)?;
        let (params, deviation) = describe_segment(f, class, &evidence[start..=end], &interval)?;
        segments.push(Segment { interval, class, params, max_quotient_deviation: deviation });
    }
    Ok(SegmentationReport { segments })
}

fn describe_segment(
    f: &Signal,
    class: SegmentClass,
    evidence: &[CenterEvidence],
    interval: &Interval,
) -> Result<(SegmentParams, f64)> {
    match class {
        SegmentClass::Affine => {
            let a = evidence.first().map(|e| e.center).unwrap_or(interval.lo());
            let b = evidence.last().map(|e| e.center).unwrap_or(interval.hi());
            let (a, b) = if b > a { (a, b) } else { (interval.lo(), interval.hi()) };
            let ya = f.eval(a)?;
            let yb = f.eval(b)?;
            let slope = (yb - ya) / (b - a);
            let dev = evidence.iter().map(|e| e.max_affine_dev).fold(0.0, f64::max);
            Ok((SegmentParams::Affine { slope, intercept: ya - slope * a }, dev))
        }
        SegmentClass::Jump => {
            // sharpest evidence marks the jump location
            let best = evidence
                .iter()
                .min_by(|p, q| p.max_jump_dev.partial_cmp(&q.max_jump_dev).unwrap())
                .expect("non-empty run");
            let location = best.center;
            let probe = best.scales.first().copied().unwrap_or(interval.len()) * 0.5;
            let domain = f.domain();
            let left = f.eval((location - probe).max(domain.lo()))?;
            let right = f.eval((location + probe).min(domain.hi()))?;
            let dev = evidence.iter().map(|e| e.max_jump_dev).fold(0.0, f64::max);
            Ok((SegmentParams::Jump { location, left_value: left, right_value: right }, dev))
        }
        SegmentClass::Constant => {
            let value = f.eval(interval.center())?;
            Ok((SegmentParams::Constant { value }, 0.0))
        }
        SegmentClass::Other => {
            let dev = evidence.iter().map(|e| e.max_affine_dev).fold(0.0, f64::max);
            Ok((SegmentParams::Other, dev))
        }
    }
}
