//! Fresnel integrals `C(t) = ∫₀ᵗ cos u² du`, `S(t) = ∫₀ᵗ sin u² du`.

/// Absolute error target for [`fresnel`].
pub const FRESNEL_TOL: f64 = 1e-12;

const MAX_DEPTH: u32 = 40;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7K15 panel for the pair `(cos u², sin u²)`; returns the Kronrod
/// estimate and the Kronrod–Gauss difference.
fn panel(a: f64, b: f64) -> ([f64; 2], f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let f = |u: f64| {
        let (s, co) = (u * u).sin_cos();
        [co, s]
    };
    let fc = f(c);
    let mut k = [WGK[7] * fc[0], WGK[7] * fc[1]];
    let mut g = [WG[3] * fc[0], WG[3] * fc[1]];
    for i in 0..7 {
        let f1 = f(c - h * XGK[i]);
        let f2 = f(c + h * XGK[i]);
        for j in 0..2 {
            k[j] += WGK[i] * (f1[j] + f2[j]);
            if i % 2 == 1 {
                g[j] += WG[i / 2] * (f1[j] + f2[j]);
            }
        }
    }
    let est = [k[0] * h, k[1] * h];
    let err = ((k[0] - g[0]) * h).abs().max(((k[1] - g[1]) * h).abs());
    (est, err)
}

fn adaptive(a: f64, b: f64, tol: f64, depth: u32, acc: &mut [f64; 2]) {
    let (est, err) = panel(a, b);
    if err <= tol || depth >= MAX_DEPTH {
        acc[0] += est[0];
        acc[1] += est[1];
        return;
    }
    let m = 0.5 * (a + b);
    adaptive(a, m, 0.5 * tol, depth + 1, acc);
    adaptive(m, b, 0.5 * tol, depth + 1, acc);
}

/// `(C(t), S(t))` by adaptive Gauss–Kronrod quadrature. Both are odd in `t`.
pub fn fresnel(t: f64) -> (f64, f64) {
    if t == 0.0 || !t.is_finite() {
        return (0.0, 0.0);
    }
    let x = t.abs();
    // one panel per half-oscillation of u² keeps each panel smooth
    let panels = (x * x / std::f64::consts::PI).ceil().max(1.0) as usize;
    let mut acc = [0.0; 2];
    let mut prev = 0.0;
    for i in 1..=panels {
        let next = if i == panels {
            x
        } else {
            (i as f64 * std::f64::consts::PI).sqrt()
        };
        adaptive(prev, next, FRESNEL_TOL / panels as f64, 0, &mut acc);
        prev = next;
    }
    (acc[0].copysign(t), acc[1].copysign(t))
}
