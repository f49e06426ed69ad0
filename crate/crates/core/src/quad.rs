//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls below `max(abs_tol, rel_tol * |I|)` or the subdivision
//! budget runs out. Interval contributions are accumulated with compensated
//! summation, which matters when the integral is large (li(10^10) ~ 4.6e8)
//! and an absolute tolerance is requested.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::sum::KahanSum;

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

// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss–Kronrod 7/15 panel: (Kronrod estimate, |Kronrod − Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Quadrature {
    integrate_split(f, &[a, b], abs_tol, rel_tol, 20_000)
}

/// Like [`integrate`] but starting from the given breakpoints, which is how
/// oscillatory integrands get one panel per period up front.
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Quadrature {
    let mut heap = BinaryHeap::new();
    let mut running_value = KahanSum::new();
    let mut running_error = KahanSum::new();
    for w in breaks.windows(2) {
        let (value, error) = gk15(&f, w[0], w[1]);
        running_value.add(value);
        running_error.add(error);
        heap.push(Piece { a: w[0], b: w[1], value, error });
    }
    loop {
        let target = abs_tol.max(rel_tol * running_value.value().abs());
        if running_error.value() <= target || heap.len() >= max_intervals {
            let (value, error) = totals(&heap);
            return Quadrature { value, error, intervals: heap.len() };
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Quadrature { value: 0.0, error: 0.0, intervals: 0 },
        };
        if worst.error == 0.0 {
            // every remaining panel is converged or unsplittable
            heap.push(worst);
            let (value, error) = totals(&heap);
            return Quadrature { value, error, intervals: heap.len() };
        }
        running_value.add(-worst.value);
        running_error.add(-worst.error);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot bisect further in floating point
            running_value.add(worst.value);
            heap.push(Piece { error: 0.0, ..worst });
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&f, lo, hi);
            running_value.add(value);
            running_error.add(error);
            heap.push(Piece { a: lo, b: hi, value, error });
        }
    }
}

fn totals(heap: &BinaryHeap<Piece>) -> (f64, f64) {
    let mut v = KahanSum::new();
    let mut e = KahanSum::new();
    for p in heap.iter() {
        v.add(p.value);
        e.add(p.error);
    }
    (v.value(), e.value())
}
