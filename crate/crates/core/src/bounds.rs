//! Tower functions, the derived lower-bound formulas, and comparison tables.
//!
//! Tower values are kept exact as a height plus an arbitrary-precision top
//! argument; they collapse to a plain integer only while that stays within
//! 4096 bits, and render symbolically otherwise. The slope constant `alpha`
//! is computed from `log2(1073) / 6` by fixed-point squaring, never from a
//! hardware log. Unspecified additive constants stay symbolic throughout:
//! numeric output always separates the computed part from the constant.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::claim::{ArrowClaim, GroundSize};
use crate::tower::{eta, eta_effective};
use crate::{Error, Result};

/// An iterated exponential: `top` under `exps` twos.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerValue {
    exps: u32,
    top: BigUint,
}

/// Collapse threshold: a value is rendered in decimal only if it fits.
const COLLAPSE_BITS: u64 = 4096;

impl TowerValue {
    pub fn new(exps: u32, top: BigUint) -> Self {
        let mut v = TowerValue { exps, top };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        while self.exps > 0 && self.top.bits() <= 12 {
            let shift: u64 = (&self.top).try_into().expect("top fits 12 bits");
            if shift >= COLLAPSE_BITS {
                break;
            }
            self.top = BigUint::from(1u32) << shift;
            self.exps -= 1;
        }
    }

    /// Exact numeric value when fully collapsed.
    pub fn exact(&self) -> Option<&BigUint> {
        (self.exps == 0).then_some(&self.top)
    }

    pub fn height_remaining(&self) -> u32 {
        self.exps
    }

    pub fn top(&self) -> &BigUint {
        &self.top
    }
}

impl core::fmt::Display for TowerValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for _ in 0..self.exps {
            write!(f, "2^")?;
        }
        if self.exps > 0 && self.top.bits() > 64 {
            write!(f, "({} bits)", self.top.bits())
        } else {
            write!(f, "{}", self.top)
        }
    }
}

/// The iterated exponential of height `r` with top argument `x`:
/// height 1 is `x` itself, each further level is a power of two.
pub fn tower(r: u32, x: u64) -> Result<TowerValue> {
    if r < 1 {
        return Err(Error::OutOfRange(String::from("tower height must be >= 1")));
    }
    Ok(TowerValue::new(r - 1, BigUint::from(x)))
}

/// A fixed-point non-negative number: `mantissa / 2^frac_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub mantissa: BigUint,
    pub frac_bits: u32,
}

impl FixedPoint {
    pub fn to_f64(&self) -> f64 {
        // keep the top 53 bits of the mantissa
        let bits = self.mantissa.bits();
        if bits == 0 {
            return 0.0;
        }
        let shift = bits.saturating_sub(53);
        let head: u64 = (&(&self.mantissa >> shift)).try_into().expect("53 bits");
        head as f64 * libm::exp2(shift as f64 - f64::from(self.frac_bits))
    }

    /// Decimal rendering with the given number of fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let scaled = (&self.mantissa * &scale) >> self.frac_bits;
        let whole = &scaled / &scale;
        let frac = &scaled % &scale;
        let mut frac_str = frac.to_string();
        while (frac_str.len() as u32) < digits {
            frac_str.insert(0, '0');
        }
        format!("{whole}.{frac_str}")
    }
}

/// `log2(value)` to `frac_bits` fractional bits, by fixed-point squaring.
pub fn log2_fixed(value: u64, frac_bits: u32) -> FixedPoint {
    assert!(value >= 1);
    let int_part = 63 - value.leading_zeros() as u64;
    // working precision: extra guard bits against truncation drift
    let precision = u64::from(frac_bits) + 32;
    let one = BigUint::from(1u32) << precision;
    let two = &one << 1u32;
    // y = value / 2^int_part, in [1, 2)
    let mut y = (BigUint::from(value) << precision) >> int_part;
    let mut mantissa = BigUint::from(int_part);
    for _ in 0..frac_bits {
        mantissa <<= 1u32;
        y = (&y * &y) >> precision;
        if y >= two {
            y >>= 1u32;
            mantissa += 1u32;
        }
    }
    FixedPoint {
        mantissa,
        frac_bits,
    }
}

/// The tower-argument slope: `log2(1073) / 6`, about 1.6779. The sibling
/// additive constant is not pinned anywhere and stays symbolic.
pub fn alpha(frac_bits: u32) -> FixedPoint {
    let log = log2_fixed(1073, frac_bits + 8);
    FixedPoint {
        mantissa: (log.mantissa / BigUint::from(6u32)) >> 8,
        frac_bits,
    }
}

/// Convenience double-precision alpha.
pub fn alpha_f64() -> f64 {
    alpha(96).to_f64()
}

/// The slope constant plus the provenance of its symbolic companion.
pub fn alpha_beta() -> (FixedPoint, &'static str) {
    (
        alpha(96),
        "beta depends on an unspecified absolute constant and stays symbolic",
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl core::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{}",
            match self {
                BoundKind::Lower => "lower",
                BoundKind::Upper => "upper",
            }
        )
    }
}

/// One row of a bounds table: a tower expression for `r_k(s; r)`.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub kind: BoundKind,
    /// Tower height of the expression.
    pub height: u32,
    /// Computed part of the tower argument, when numeric.
    pub argument_numeric: Option<f64>,
    /// Full argument, with symbolic constants spelled out.
    pub argument_text: String,
    pub source: String,
    /// True when the row lies outside its formula's validity range.
    pub outside_validity: bool,
}

impl BoundRow {
    /// Tab-separated machine row: k, r, s, kind, height, argument, source.
    pub fn machine_row(&self) -> String {
        let argument = match self.argument_numeric {
            Some(x) => format!("{x:.6}{}", if self.argument_text.is_empty() { "" } else { "+C" }),
            None => String::from("symbolic"),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.k, self.r, self.s, self.kind, self.height, argument, self.source
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundTarget {
    RPlus1,
    RPlus2,
}

/// The derived lower bound on `r_k(r+1; r)` or `r_k(r+2; r)`: a height-`r`
/// tower whose argument grows linearly in `k` with slope `alpha/2` or
/// `alpha`.
pub fn stepped_lower_bound(k: u32, r: u32, target: BoundTarget) -> Result<BoundRow> {
    if r < 3 {
        return Err(Error::OutOfRange(format!(
            "the stepped-up bound needs r >= 3, got {r}"
        )));
    }
    let valid = match target {
        BoundTarget::RPlus1 => {
            (r == 3 && k >= 4) || (r >= 4 && k >= (5 * r / 2).saturating_sub(5))
        }
        BoundTarget::RPlus2 => {
            (r == 3 && k >= 2) || (r >= 4 && k >= (5 * r / 2).saturating_sub(7))
        }
    };
    if !valid {
        return Err(Error::OutOfRange(format!(
            "k = {k} below the bound's validity range for r = {r}"
        )));
    }
    Ok(stepped_row(k, r, target, false))
}

fn stepped_row(k: u32, r: u32, target: BoundTarget, outside: bool) -> BoundRow {
    let a = alpha_f64();
    let (s, slope, slope_text) = match target {
        BoundTarget::RPlus1 => (r + 1, a / 2.0, "alpha/2"),
        BoundTarget::RPlus2 => (r + 2, a, "alpha"),
    };
    let centred = f64::from(k) - 5.0 * f64::from(r) / 2.0;
    BoundRow {
        k,
        r,
        s,
        kind: BoundKind::Lower,
        height: r,
        argument_numeric: Some(slope * centred),
        argument_text: format!("{slope_text}*(k - 5r/2) + beta"),
        source: String::from("stepped-up towers"),
        outside_validity: outside,
    }
}

/// A symbolic claim row from the repeated-step bookkeeping.
#[derive(Clone, Debug)]
pub struct ChainRow {
    pub claim: ArrowClaim,
    /// Colour count under the stated eta accounting (what the claim uses).
    pub colours_printed: u32,
    /// Colour count under the effective accounting.
    pub colours_effective: u32,
    /// True when the two accountings disagree for this row.
    pub eta_differs: bool,
}

/// The pair of claims reached from `n -/-> (s)_{K+2}^3` after `2t+1` and
/// `2t+2` further steps: uniformities `4+2t` and `5+2t`, targets `s+2t+1`
/// and `s+2t+2`, colour counts `K+5t+3` and `K+5t+5` under the stated
/// accounting.
pub fn chain_bounds(big_k: u32, s: u32, n: u64, t: u32) -> Result<(ChainRow, ChainRow)> {
    if s < 4 || n < u64::from(s) {
        return Err(Error::OutOfRange(String::from(
            "the chain starts from n >= s >= 4",
        )));
    }
    // stated and effective extra-colour totals across the steps
    let totals = |steps: u32| -> Result<(u32, u32)> {
        let mut printed = 0;
        let mut effective = 0;
        for i in 0..steps {
            printed += eta(3 + i)?;
            effective += eta_effective(3 + i)?;
        }
        Ok((printed, effective))
    };

    let mut rows = Vec::with_capacity(2);
    for (steps, height, target, colours) in [
        (2 * t + 1, 2 * t + 2, s + 2 * t + 1, big_k + 5 * t + 3),
        (2 * t + 2, 2 * t + 3, s + 2 * t + 2, big_k + 5 * t + 5),
    ] {
        let (printed, effective) = totals(steps)?;
        debug_assert_eq!(big_k + 2 + printed, colours);
        let ground = GroundSize::new(n);
        let ground = (0..height - 1).fold(ground, |g, _| g.exp2());
        let claim = ArrowClaim::negative(
            ground,
            steps + 3,
            alloc::vec![target; colours as usize],
        )?;
        rows.push(ChainRow {
            claim,
            colours_printed: colours,
            colours_effective: big_k + 2 + effective,
            eta_differs: printed != effective,
        });
    }
    let second = rows.pop().expect("two rows");
    let first = rows.pop().expect("two rows");
    Ok((first, second))
}

/// `Log x = max(1, log2 x)`.
pub fn guarded_log(x: f64) -> f64 {
    if x <= 2.0 {
        1.0
    } else {
        libm::log2(x)
    }
}

/// `Log` iterated `times` times, guarded at every level.
pub fn iterated_log(x: f64, times: u32) -> f64 {
    (0..times).fold(x, |v, _| guarded_log(v))
}

/// The two-sided bracket for the least subset-colouring count over
/// hypergraphs of chromatic number `n`.
#[derive(Clone, Debug)]
pub struct KnrBracket {
    pub lower_numeric: f64,
    pub lower_text: String,
    pub upper_numeric: f64,
    pub upper_text: String,
}

pub fn k_n_r_bracket(n: u64, r: u32) -> Result<KnrBracket> {
    if r < 2 || n < u64::from(r) {
        return Err(Error::OutOfRange(String::from("bracket needs n >= r >= 2")));
    }
    let rn = (u64::from(r) * n) as f64;
    let lower = iterated_log(rn, r - 1) / iterated_log(rn, r) / 3.0;
    let upper = 2.0 / alpha_f64() * iterated_log(rn, r - 1) + 5.0 * f64::from(r) / 2.0;
    Ok(KnrBracket {
        lower_numeric: lower,
        lower_text: String::from("Log^(r-1)(rn) / (3 Log^(r)(rn)) + o(1)"),
        upper_numeric: upper,
        upper_text: String::from("(2/alpha) Log^(r-1)(rn) + 5r/2 + O(1)"),
    })
}

/// Side-by-side lower-bound rows for `r_k(.; r)` across a `k` range,
/// including the literature comparisons.
pub fn comparison_table(r: u32, k_from: u32, k_to: u32) -> Result<Vec<BoundRow>> {
    if r < 3 || k_from > k_to {
        return Err(Error::OutOfRange(String::from(
            "comparison table needs r >= 3 and a non-empty k range",
        )));
    }
    let mut rows = Vec::new();
    for k in k_from..=k_to {
        for target in [BoundTarget::RPlus1, BoundTarget::RPlus2] {
            let row = match stepped_lower_bound(k, r, target) {
                Ok(row) => row,
                Err(_) => stepped_row(k, r, target, true),
            };
            rows.push(row);
        }
        // general tower bound with slope 1/2^r, valid for k > r * 2^r
        let general_valid = u64::from(k) > u64::from(r) * (1u64 << r);
        rows.push(BoundRow {
            k,
            r,
            s: r + 1,
            kind: BoundKind::Lower,
            height: r,
            argument_numeric: Some(f64::from(k) / libm::exp2(f64::from(r))),
            argument_text: String::from("k / 2^r"),
            source: String::from("general stepping bound"),
            outside_validity: !general_valid,
        });
        if r == 3 {
            // prior best for r_k(5;3): slope 1
            rows.push(BoundRow {
                k,
                r,
                s: 5,
                kind: BoundKind::Lower,
                height: 3,
                argument_numeric: Some(f64::from(k)),
                argument_text: String::from("k + O(1)"),
                source: String::from("prior slope-1 bound for r_k(5;3)"),
                outside_validity: false,
            });
        }
        // the classical two-sided envelope; both constants are unspecified,
        // so these rows stay fully symbolic
        rows.push(BoundRow {
            k,
            r,
            s: r + 1,
            kind: BoundKind::Lower,
            height: r,
            argument_numeric: None,
            argument_text: String::from("c'(s,r) * k, for s large"),
            source: String::from("classical envelope"),
            outside_validity: false,
        });
        rows.push(BoundRow {
            k,
            r,
            s: r + 1,
            kind: BoundKind::Upper,
            height: r,
            argument_numeric: None,
            argument_text: String::from("c(s,r) * k * log k, c <= 3(s-r)"),
            source: String::from("classical envelope"),
            outside_validity: false,
        });
    }
    Ok(rows)
}

/// Colour growth of one step at uniformity `r`, for each known stepping-up rule:
/// ours appends `eta_effective(r)`; the doubling variant reaches `2k+2r-4`;
/// the early variant reaches `k + 2^r + 2^(r-1) - 4`.
#[derive(Clone, Debug)]
pub struct StepComparison {
    pub r: u32,
    pub ours_extra: u32,
    pub doubling_total: String,
    pub early_total: String,
}

pub fn step_comparison(r: u32) -> Result<StepComparison> {
    Ok(StepComparison {
        r,
        ours_extra: eta_effective(r)?,
        doubling_total: String::from("2k + 2r - 4"),
        early_total: format!("k + {}", (1u64 << r) + (1u64 << (r - 1)) - 4),
    })
}

/// Column-aligned text rendering of a comparison table.
pub fn render_table(rows: &[BoundRow]) -> String {
    let header = ["k", "r", "s", "kind", "height", "argument", "source", "validity"];
    let mut cells: Vec<[String; 8]> = Vec::with_capacity(rows.len());
    for row in rows {
        let argument = match row.argument_numeric {
            Some(x) => format!("twr_{}({x:.4} + C) [{}]", row.height, row.argument_text),
            None => format!("twr_{}({})", row.height, row.argument_text),
        };
        cells.push([
            row.k.to_string(),
            row.r.to_string(),
            row.s.to_string(),
            row.kind.to_string(),
            row.height.to_string(),
            argument,
            row.source.clone(),
            String::from(if row.outside_validity {
                "outside validity"
            } else {
                "valid"
            }),
        ]);
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, row: &[&str]| {
        for (i, (cell, w)) in row.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            for _ in cell.len()..*w {
                out.push(' ');
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    emit(&mut out, &header);
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(String::as_str).collect();
        emit(&mut out, &refs);
    }
    out
}

pub fn render_machine_table(rows: &[BoundRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.machine_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_examples() {
        assert_eq!(tower(1, 7).unwrap().exact().unwrap(), &BigUint::from(7u32));
        assert_eq!(tower(3, 2).unwrap().exact().unwrap(), &BigUint::from(16u32));
        assert_eq!(
            tower(4, 2).unwrap().exact().unwrap(),
            &BigUint::from(65536u32)
        );
        assert!(tower(0, 3).is_err());
    }

    #[test]
    fn tower_stays_symbolic_when_huge() {
        // 2^4095 fits the 4096-bit rendering threshold, 2^4096 does not
        let collapsed = tower(2, 4095).unwrap();
        assert_eq!(collapsed.height_remaining(), 0);
        assert_eq!(collapsed.exact().unwrap().bits(), 4096);
        let v = tower(2, 4096).unwrap();
        assert_eq!(v.height_remaining(), 1);
        assert!(v.exact().is_none());
        assert!(v.to_string().starts_with("2^"), "{v}");
        // one collapse step happens, then the value parks symbolically
        let deep = tower(4, 4).unwrap();
        assert_eq!(deep.height_remaining(), 1);
        assert_eq!(deep.top(), &BigUint::from(65536u32));
    }

    #[test]
    fn tower_monotonicity() {
        for r in 1..=3u32 {
            for x in 2..=6u64 {
                let a = tower(r, x).unwrap();
                let b = tower(r, x + 1).unwrap();
                assert!(a.exact().unwrap() < b.exact().unwrap());
            }
        }
        for r in 1..=3u32 {
            let a = tower(r, 2).unwrap();
            let b = tower(r + 1, 2).unwrap();
            assert!(a.exact().unwrap() < b.exact().unwrap());
        }
    }

    #[test]
    fn alpha_matches_the_f64_oracle() {
        let ours = alpha_f64();
        let oracle = (1073.0f64).log2() / 6.0;
        assert!((ours - oracle).abs() < 1e-9, "{ours} vs {oracle}");
        assert!((ours - 1.678).abs() <= 0.001);
        // 4-digit decimal rendering
        assert_eq!(alpha(96).to_decimal(4), "1.6779");
    }

    #[test]
    fn stepped_lower_bound_ranges() {
        assert!(stepped_lower_bound(4, 3, BoundTarget::RPlus1).is_ok());
        assert!(stepped_lower_bound(3, 3, BoundTarget::RPlus1).is_err());
        assert!(stepped_lower_bound(2, 3, BoundTarget::RPlus2).is_ok());
        assert!(stepped_lower_bound(1, 3, BoundTarget::RPlus1).is_err());
        // r = 4: floor(5r/2) - 5 = 5
        assert!(stepped_lower_bound(5, 4, BoundTarget::RPlus1).is_ok());
        assert!(stepped_lower_bound(4, 4, BoundTarget::RPlus1).is_err());
        // r = 4 target r+2: floor(5r/2) - 7 = 3
        assert!(stepped_lower_bound(3, 4, BoundTarget::RPlus2).is_ok());

        let row = stepped_lower_bound(10, 3, BoundTarget::RPlus2).unwrap();
        let a = alpha_f64();
        let expect = a * (10.0 - 7.5);
        assert!((row.argument_numeric.unwrap() - expect).abs() < 1e-9);
        assert_eq!(row.height, 3);
        assert_eq!(row.s, 5);
    }

    #[test]
    fn chain_increments() {
        let (a0, b0) = chain_bounds(2, 4, 13, 0).unwrap();
        assert_eq!(a0.claim.to_string(), "8192 -/-> (5,5,5,5,5)^4");
        assert_eq!(a0.colours_printed, 5); // K + 3
        assert!(!a0.eta_differs);
        assert_eq!(b0.colours_printed, 7); // K + 5
        assert_eq!(b0.colours_effective, 8); // effective gives one more
        assert!(b0.eta_differs);
        assert_eq!(b0.claim.uniformity(), 5);
        assert_eq!(b0.claim.targets()[0], 6);

        let (a1, b1) = chain_bounds(2, 4, 13, 1).unwrap();
        // per chain step pair: target +2, colours +5, uniformity +2
        assert_eq!(a1.claim.targets()[0], a0.claim.targets()[0] + 2);
        assert_eq!(a1.colours_printed, a0.colours_printed + 5);
        assert_eq!(a1.claim.uniformity(), a0.claim.uniformity() + 2);
        assert_eq!(b1.colours_printed, b0.colours_printed + 5);
        assert_eq!(b1.claim.uniformity(), 7);
        assert_eq!(b1.claim.targets()[0], 8);
    }

    #[test]
    fn guarded_log_and_bracket() {
        assert_eq!(guarded_log(0.5), 1.0);
        assert_eq!(guarded_log(16.0), 4.0);
        let bracket = k_n_r_bracket(8, 2).unwrap();
        // Log(16) / (3 Log(Log 16)) = 4 / 6
        assert!((bracket.lower_numeric - 2.0 / 3.0).abs() < 1e-12);
        let upper_slope = 2.0 / alpha_f64();
        assert!((upper_slope - 1.192).abs() < 0.001);
    }

    #[test]
    fn comparison_dominates_the_general_slope() {
        // alpha/2 > 1/2^r for every r >= 2, and the improved argument beats
        // the general one right from the joint validity threshold
        let a = alpha_f64();
        for r in 2..=10u32 {
            assert!(a / 2.0 > libm::exp2(-f64::from(r)));
        }
        for r in 3..=8u32 {
            let k0 = u64::from(r) * (1u64 << r) + 1;
            if let Ok(k0) = u32::try_from(k0) {
                let ours = a / 2.0 * (f64::from(k0) - 2.5 * f64::from(r));
                let general = f64::from(k0) / libm::exp2(f64::from(r));
                assert!(ours > general, "r = {r}");
            }
        }
    }

    #[test]
    fn table_has_the_slope_comparison() {
        let rows = comparison_table(3, 2, 10).unwrap();
        let ours: Vec<_> = rows
            .iter()
            .filter(|row| row.s == 5 && row.source.contains("stepped-up"))
            .collect();
        assert!(!ours.is_empty());
        let prior: Vec<_> = rows
            .iter()
            .filter(|row| row.source.contains("prior"))
            .collect();
        assert!(!prior.is_empty());
        // slope comparison at k = 10: 1.678 * (k - 7.5) vs k
        let text = render_table(&rows);
        assert!(text.contains("prior slope-1 bound"));
    }

    #[test]
    fn step_comparison_values() {
        let cmp = step_comparison(4).unwrap();
        assert_eq!(cmp.ours_extra, 3);
        assert_eq!(cmp.early_total, "k + 20"); // 16 + 8 - 4
    }
}
