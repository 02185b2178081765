//! Tick location and label formatting.

const STEPS: [f64; 5] = [1.0, 2.0, 2.5, 5.0, 10.0];
const MAX_TICKS: f64 = 8.0;

/// Round-number tick locations covering `[lo, hi]`.
pub fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Vec::new();
    }
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let span = hi - lo;
    if span <= 0.0 {
        return vec![lo];
    }
    let raw = span / MAX_TICKS;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = STEPS
        .iter()
        .map(|s| s * magnitude)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * magnitude);
    let eps = step * 1e-9;
    let first = (lo / step - 1e-9).ceil() as i64;
    let mut out = Vec::new();
    let mut k = first;
    loop {
        let v = k as f64 * step;
        if v > hi + eps {
            break;
        }
        // snap tiny float noise around zero
        out.push(if v.abs() < eps { 0.0 } else { v });
        k += 1;
    }
    out
}

/// Formats `value` with as many decimals as the tick spacing needs.
pub fn format_tick(value: f64, all: &[f64]) -> String {
    let step = all
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let decimals = if step.is_finite() {
        let mut d = 0usize;
        while d < 8 && ((step * 10f64.powi(d as i32)).round() - step * 10f64.powi(d as i32)).abs() > 1e-6 {
            d += 1;
        }
        d
    } else {
        let mut d = 0usize;
        while d < 8 && ((value * 10f64.powi(d as i32)).round() - value * 10f64.powi(d as i32)).abs() > 1e-6 {
            d += 1;
        }
        d
    };
    let s = format!("{value:.decimals$}");
    // the minus sign is typographic in rendered labels
    if let Some(rest) = s.strip_prefix('-') {
        if rest.chars().all(|c| c == '0' || c == '.') {
            return rest.to_string();
        }
        format!("\u{2212}{rest}")
    } else {
        s
    }
}
