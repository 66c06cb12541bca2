//! The sorted sum of two open chains: merge the shift sequences, always
//! emitting the head of the sub-sequence whose remaining rotation is larger
//! (the "rightmost" continuation), preferring the first chain on ties.
//!
//! For inputs with aligned start directions, equal rotations and angular
//! convexity above -pi, the merge is non-reverse, preserves rotation and
//! does not lower the angular convexity below the worse input. The
//! parameterization maps exhibit every point of the result as a sum of a
//! point of each input, so the merge lies inside the pointwise Minkowski sum.

use crate::error::{Error, Result};
use crate::geom::{aco_open, signed_angle, Polyline, Shift, Vec2, EPS_ANGLE};

/// Which input chain an output shift came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceTag {
    FromP,
    FromQ,
}

/// Result of a sorted-sum merge: the merged chain plus one source tag per
/// output shift. The tagged subsequences reproduce each input shift sequence
/// exactly and in order.
#[derive(Debug, Clone)]
pub struct MergedChain {
    result: Polyline,
    tags: Vec<SourceTag>,
}

impl MergedChain {
    pub fn result(&self) -> &Polyline {
        &self.result
    }

    pub fn tags(&self) -> &[SourceTag] {
        &self.tags
    }

    /// Drop zero-length shifts (and their tags) so downstream geometry never
    /// sees virtual edges.
    pub fn without_virtual_shifts(&self) -> Result<MergedChain> {
        let mut shifts = Vec::new();
        let mut tags = Vec::new();
        for (s, t) in self.result.shifts().iter().zip(&self.tags) {
            if !s.is_virtual() {
                shifts.push(*s);
                tags.push(*t);
            }
        }
        Ok(MergedChain {
            result: Polyline::open(self.result.start(), shifts)?,
            tags,
        })
    }
}

/// Check the merge preconditions: parallel start directions and equal
/// rotations. End-direction agreement follows from these two.
pub fn validate_pair(p: &Polyline, q: &Polyline) -> Result<()> {
    let head_p = p.shifts()[0].direction();
    let head_q = q.shifts()[0].direction();
    let angle = signed_angle(head_p, head_q).unwrap_or(std::f64::consts::PI);
    if angle.abs() > EPS_ANGLE {
        return Err(Error::StartsNotAligned(angle));
    }
    let (rp, rq) = (p.rot(), q.rot());
    if (rp - rq).abs() > EPS_ANGLE {
        return Err(Error::RotationsDiffer(rp, rq));
    }
    debug_assert!(
        signed_angle(
            p.shifts().last().unwrap().direction(),
            q.shifts().last().unwrap().direction()
        )
        .map(|a| a.abs() < 1e-6)
        .unwrap_or(false),
        "end directions must agree when starts and rotations do"
    );
    Ok(())
}

/// The sorted sum `P +_s Q`.
///
/// Starts at `p.start + q.start` and repeatedly emits the head of whichever
/// remaining tail has the larger rotation, preferring `P` on ties; when one
/// tail runs out the other is appended wholesale. Requires both inputs to
/// have angular convexity above -pi, which guarantees the output is
/// non-reverse, `rot R = rot P`, and `aco R >= min(aco P, aco Q)`.
pub fn sorted_sum(p: &Polyline, q: &Polyline) -> Result<MergedChain> {
    validate_pair(p, q)?;
    for chain in [p, q] {
        let aco = aco_open(chain).value;
        if aco <= -std::f64::consts::PI + EPS_ANGLE {
            return Err(Error::AcoPreconditionViolated(aco));
        }
    }

    let sp = p.shifts();
    let sq = q.shifts();
    let rot_suffix = |chain: &Polyline| -> Vec<f64> {
        // rot of the tail starting at shift i, by suffix sums of the turns.
        let turns = chain.turn_angles();
        let n = chain.shifts().len();
        let mut suffix = vec![0.0; n + 1];
        for i in (0..n).rev() {
            suffix[i] = if i < turns.len() {
                suffix[i + 1] + turns[i]
            } else {
                0.0
            };
        }
        suffix
    };
    let suf_p = rot_suffix(p);
    let suf_q = rot_suffix(q);

    let mut shifts: Vec<Shift> = Vec::with_capacity(sp.len() + sq.len());
    let mut tags: Vec<SourceTag> = Vec::with_capacity(sp.len() + sq.len());
    let (mut i, mut j) = (0usize, 0usize);
    loop {
        if i == sp.len() && j == sq.len() {
            break;
        }
        if i == sp.len() {
            shifts.extend_from_slice(&sq[j..]);
            tags.resize(tags.len() + (sq.len() - j), SourceTag::FromQ);
            break;
        }
        if j == sq.len() {
            shifts.extend_from_slice(&sp[i..]);
            tags.resize(tags.len() + (sp.len() - i), SourceTag::FromP);
            break;
        }
        if suf_p[i] >= suf_q[j] - EPS_ANGLE {
            shifts.push(sp[i]);
            tags.push(SourceTag::FromP);
            i += 1;
        } else {
            shifts.push(sq[j]);
            tags.push(SourceTag::FromQ);
            j += 1;
        }
    }

    let result = Polyline::open(p.start() + q.start(), shifts)?;
    Ok(MergedChain { result, tags })
}

/// A non-decreasing piecewise-linear map of [0, 1] onto [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMap {
    breakpoints: Vec<(f64, f64)>,
}

impl ParamMap {
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let pts = &self.breakpoints;
        for w in pts.windows(2) {
            let (t0, v0) = w[0];
            let (t1, v1) = w[1];
            if t <= t1 {
                if t1 == t0 {
                    return v1;
                }
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            }
        }
        pts.last().map(|&(_, v)| v).unwrap_or(0.0)
    }
}

/// The monotone reparameterizations `phi`, `psi` with
/// `r(t) = p(phi(t)) + q(psi(t))` under uniform per-edge parameterizations
/// (vertices of `p` at multiples of 1/n, of `q` at 1/m, of the merge at
/// 1/(n+m)).
pub fn param_maps(m: &MergedChain, p: &Polyline, q: &Polyline) -> Result<(ParamMap, ParamMap)> {
    let n_p = p.shifts().len();
    let n_q = q.shifts().len();
    let total = m.tags.len();
    if total != n_p + n_q || m.result.shifts().len() != total {
        return Err(Error::TagMismatch);
    }
    if m.result.start().dist(p.start() + q.start()) > 1e-9 * (1.0 + m.result.diameter()) {
        return Err(Error::TagMismatch);
    }
    // The tagged subsequences must reproduce the inputs shift by shift.
    let (mut i, mut j) = (0usize, 0usize);
    for (s, tag) in m.result.shifts().iter().zip(&m.tags) {
        let expect = match tag {
            SourceTag::FromP => {
                i += 1;
                p.shifts().get(i - 1)
            }
            SourceTag::FromQ => {
                j += 1;
                q.shifts().get(j - 1)
            }
        };
        let matches = expect.is_some_and(|e| {
            e.direction().dist(s.direction()) <= 1e-9 && (e.length() - s.length()).abs() <= 1e-9
        });
        if !matches {
            return Err(Error::TagMismatch);
        }
    }
    if i != n_p || j != n_q {
        return Err(Error::TagMismatch);
    }

    let mut phi = Vec::with_capacity(total + 1);
    let mut psi = Vec::with_capacity(total + 1);
    phi.push((0.0, 0.0));
    psi.push((0.0, 0.0));
    let (mut cp, mut cq) = (0usize, 0usize);
    for (k, tag) in m.tags.iter().enumerate() {
        match tag {
            SourceTag::FromP => cp += 1,
            SourceTag::FromQ => cq += 1,
        }
        let t = (k + 1) as f64 / total as f64;
        phi.push((t, cp as f64 / n_p as f64));
        psi.push((t, cq as f64 / n_q as f64));
    }
    Ok((ParamMap { breakpoints: phi }, ParamMap { breakpoints: psi }))
}

/// Uniform per-edge evaluation: vertex `i` at parameter `i/n`.
pub fn eval_uniform(chain: &Polyline, t: f64) -> Vec2 {
    let n = chain.shifts().len();
    let verts = chain.vertices();
    let scaled = t.clamp(0.0, 1.0) * n as f64;
    let idx = (scaled.floor() as usize).min(n - 1);
    let frac = scaled - idx as f64;
    verts[idx] + chain.shifts()[idx].vector() * frac
}
