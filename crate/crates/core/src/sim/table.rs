use std::fmt::Write as _;
use std::io;

pub const CSV_HEADER: &str =
    "m,p,q,trials,fail_rate,fail_stderr,analytic_fail,mean_distance_m,mean_energy_j,mean_detours";

/// Aggregates for one swarm size.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub m: u32,
    pub p: f64,
    pub q: f64,
    pub trials: u64,
    pub failures: u64,
    pub fail_rate: f64,
    /// Binomial standard error of `fail_rate`.
    pub fail_stderr: f64,
    /// `1 - swarm_path_success(p, q, k, m)`; only comparable to `fail_rate`
    /// when the retry cap is zero.
    pub analytic_fail: f64,
    pub mean_distance_m: f64,
    pub mean_energy_j: f64,
    pub mean_detours: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn row(&self, m: u32) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.m,
                format_sig(r.p, 9),
                format_sig(r.q, 9),
                r.trials,
                format_sig(r.fail_rate, 9),
                format_sig(r.fail_stderr, 9),
                format_sig(r.analytic_fail, 9),
                format_sig(r.mean_distance_m, 9),
                format_sig(r.mean_energy_j, 9),
                format_sig(r.mean_detours, 9),
            );
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, mut writer: W) -> io::Result<()> {
        writer.write_all(self.to_csv().as_bytes())
    }
}

/// `printf("%.*g")`-style formatting: `digits` significant digits, fixed
/// notation for decimal exponents in `[-4, digits)`, trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (0.16777216, "0.16777216"),
            (1.0 / 3.0, "0.333333333"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (9.9999999999, "10"),
            (4000.0, "4000"),
            (0.001180, "0.00118"),
        ];
        for (x, expected) in cases {
            assert_eq!(format_sig(x, 9), expected, "{x}");
        }
    }

    #[test]
    fn csv_layout() {
        let table = ResultTable {
            rows: vec![ResultRow {
                m: 3,
                p: 0.2,
                q: 0.2,
                trials: 10,
                failures: 1,
                fail_rate: 0.1,
                fail_stderr: (0.09_f64 / 10.0).sqrt(),
                analytic_fail: 0.197184,
                mean_distance_m: 1800.0,
                mean_energy_j: 216000.0,
                mean_detours: 0.0,
            }],
        };
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("3,0.2,0.2,10,0.1,0.0948683298,0.197184,1800,216000,0")
        );
        assert_eq!(lines.next(), None);
    }
}
