/// Neumaier-compensated running sum with an a-posteriori error bound.
///
/// `value + compensation` is the compensated total. Besides the count, the sum
/// of absolute values of the terms is tracked so a rigorous error bound can be
/// reported next to the value.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    pub value: f64,
    pub compensation: f64,
    pub term_count: u64,
    pub abs_sum: f64,
}

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn two_sum_into(&mut self, x: f64) {
        let t = self.value + x;
        if self.value.abs() >= x.abs() {
            self.compensation += (self.value - t) + x;
        } else {
            self.compensation += (x - t) + self.value;
        }
        self.value = t;
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.two_sum_into(x);
        self.term_count += 1;
        self.abs_sum += x.abs();
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.two_sum_into(other.value);
        self.two_sum_into(other.compensation);
        self.term_count += other.term_count;
        self.abs_sum += other.abs_sum;
    }

    pub fn total(&self) -> f64 {
        self.value + self.compensation
    }

    /// Bound on `|total − exact sum of the added f64 terms|`.
    ///
    /// Neumaier summation satisfies `|ŝ − s| ≤ 2u|s| + O(n u²) Σ|xᵢ|`; the final
    /// rounding of `value + compensation` adds `u|ŝ|`.
    pub fn error_bound(&self) -> f64 {
        let u = UNIT_ROUNDOFF;
        let n = self.term_count as f64;
        3.0 * u * self.total().abs() + 4.0 * n * u * u * self.abs_sum
    }

    /// Error bound that also charges one rounding per term for terms that
    /// were themselves computed in floating point (e.g. `±1/n`).
    pub fn error_bound_with_term_rounding(&self) -> f64 {
        self.error_bound() + UNIT_ROUNDOFF * self.abs_sum
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}
