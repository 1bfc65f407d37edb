//! Adaptive Gauss–Kronrod (7/15) quadrature of complex-valued functions of
//! a real parameter.

use num_complex::Complex64;

use crate::error::Result;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Maximum bisection depth below one initial panel.
const MAX_DEPTH: u32 = 40;

/// One 15-point Kronrod estimate and its difference from the embedded
/// 7-point Gauss rule.
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx)? + f(centre + dx)?;
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    Ok((kronrod, (kronrod - gauss).norm()))
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// ∫_a^b f over `panels` equal initial panels, each bisected until its
/// error estimate falls below its length share of `abs_tol`.
pub fn integrate<F>(f: &F, a: f64, b: f64, panels: usize, abs_tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let density = abs_tol / (b - a).abs();
    let mut out = Integral {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        evaluations: 0,
    };
    for p in 0..panels {
        let lo = a + width * p as f64;
        let hi = if p + 1 == panels { b } else { lo + width };
        adapt(f, lo, hi, density, 0, &mut out)?;
    }
    Ok(out)
}

fn adapt<F>(f: &F, a: f64, b: f64, density: f64, depth: u32, out: &mut Integral) -> Result<()>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (value, error) = gk15(f, a, b)?;
    out.evaluations += 15;
    if error <= density * (b - a).abs() || depth >= MAX_DEPTH {
        out.value += value;
        out.error += error;
        return Ok(());
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, density, depth + 1, out)?;
    adapt(f, mid, b, density, depth + 1, out)
}
