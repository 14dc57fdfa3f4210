/// Two-sided standard normal quantile for 95% coverage.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

/// Wilson score interval for `successes` out of `trials`.
///
/// Stays inside `[0, 1]` and always contains the observed frequency, also at
/// 0 and 1 where the normal approximation collapses to a point.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> Interval {
    if trials == 0 {
        return Interval { low: 0.0, high: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let center = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let scale = 1.0 + z2 / n;
    Interval {
        low: ((center - spread) / scale).clamp(0.0, 1.0).min(p),
        high: ((center + spread) / scale).clamp(0.0, 1.0).max(p),
    }
}

/// A binomial frequency with its 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub frequency: f64,
    pub ci95: Interval,
}

impl Estimate {
    /// `None` when there were no trials.
    pub fn new(successes: u64, trials: u64) -> Option<Self> {
        (trials > 0).then(|| Self {
            successes,
            trials,
            frequency: successes as f64 / trials as f64,
            ci95: wilson_interval(successes, trials, Z95),
        })
    }
}
