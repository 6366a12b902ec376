//! The smooth cutoff profile.
//!
//! `chi` interpolates from 0 to 1 on `[t0, t1] = [1, 2]` and is applied
//! to `t = |a(z)|^2 / eps`, so the region where it varies is a shell
//! around the zero set of the field that shrinks with `eps`. The
//! distributional theory wants a C-infinity cutoff; for convergent
//! integrals at fixed `eps` a C^1/C^2 smoothstep is enough, and having
//! two admissible profiles gives a direct check that results do not
//! depend on the choice.

/// Smoothstep degree of the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothstepKind {
    /// `3x^2 - 2x^3`, C^1 at the cuts.
    Cubic,
    /// `10x^3 - 15x^4 + 6x^5`, C^2 at the cuts.
    Quintic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiProfile {
    pub t0: f64,
    pub t1: f64,
    pub kind: SmoothstepKind,
}

impl ChiProfile {
    pub fn quintic() -> Self {
        ChiProfile { t0: 1.0, t1: 2.0, kind: SmoothstepKind::Quintic }
    }

    pub fn cubic() -> Self {
        ChiProfile { t0: 1.0, t1: 2.0, kind: SmoothstepKind::Cubic }
    }

    /// `chi(t)`: 0 for `t <= t0`, 1 for `t >= t1`, monotone in between.
    pub fn chi(&self, t: f64) -> f64 {
        let x = ((t - self.t0) / (self.t1 - self.t0)).clamp(0.0, 1.0);
        match self.kind {
            SmoothstepKind::Cubic => x * x * (3.0 - 2.0 * x),
            SmoothstepKind::Quintic => x * x * x * (10.0 + x * (-15.0 + 6.0 * x)),
        }
    }

    /// `d chi / d t`; identically zero outside the open shell.
    pub fn dchi(&self, t: f64) -> f64 {
        if t <= self.t0 || t >= self.t1 {
            return 0.0;
        }
        let w = self.t1 - self.t0;
        let x = (t - self.t0) / w;
        let d = match self.kind {
            SmoothstepKind::Cubic => 6.0 * x * (1.0 - x),
            SmoothstepKind::Quintic => 30.0 * x * x * (1.0 - x) * (1.0 - x),
        };
        d / w
    }
}
