//! Offset logarithmic integral `Li(x) = ∫₂ˣ dt / log t`.
//!
//! The integrand is smooth on `[2, x]`; substituting `t = eᵘ` turns it into
//! `eᵘ / u` on `[ln 2, ln x]`, which adaptive Gauss-Kronrod (7/15) handles
//! with a handful of panels even at `x = 10¹⁰`.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn integrand(u: f64) -> f64 {
    u.exp() / u
}

/// Kronrod estimate and |Kronrod − Gauss| on `[a, b]`.
fn gk15(a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = integrand(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = integrand(c - dx) + integrand(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adaptive(a: f64, b: f64, tol: f64, depth: u32, acc: &mut f64, comp: &mut f64) {
    let (est, err) = gk15(a, b);
    if err <= tol || depth == 0 {
        // Neumaier step keeps the panel sum from drifting at large x
        let t = *acc + est;
        if acc.abs() >= est.abs() {
            *comp += (*acc - t) + est;
        } else {
            *comp += (est - t) + *acc;
        }
        *acc = t;
        return;
    }
    let m = 0.5 * (a + b);
    adaptive(a, m, tol * 0.5, depth - 1, acc, comp);
    adaptive(m, b, tol * 0.5, depth - 1, acc, comp);
}

/// `Li(x) = ∫₂ˣ dt / log t`, defined for `x ≥ 2`.
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 || !x.is_finite() {
        return Err(Error::Domain(format!("Li(x) requires finite x ≥ 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let (a, b) = (std::f64::consts::LN_2, x.ln());
    // relative tolerance, since the value reaches ~4.6e8 at x = 1e10
    let scale = x / b;
    let tol = (1e-15 * scale).max(1e-13);
    let (mut acc, mut comp) = (0.0, 0.0);
    let panels = 8;
    let w = (b - a) / panels as f64;
    for k in 0..panels {
        let lo = a + k as f64 * w;
        let hi = if k + 1 == panels { b } else { lo + w };
        adaptive(lo, hi, tol / panels as f64, 30, &mut acc, &mut comp);
    }
    Ok(acc + comp)
}
