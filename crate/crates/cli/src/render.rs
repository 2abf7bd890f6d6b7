//! Output assembly: one report per command, rendered as text lines or
//! as the stable JSON object {inputs, exact, float, verdicts}.

use flagcalc::dhym::GaussRat;
use flagcalc::rootsys::{Rat, WeightVector};
use num::ToPrimitive;
use serde_json::{json, Map, Value};

/// Everything a command wants to say, kept in both presentations.
#[derive(Default)]
pub struct Report {
    pub inputs: Map<String, Value>,
    pub exact: Map<String, Value>,
    pub float: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, text: String) {
        self.lines.push(text);
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            let obj = json!({
                "inputs": self.inputs,
                "exact": self.exact,
                "float": self.float,
                "verdicts": self.verdicts,
            });
            print_or_quit(&obj.to_string());
        } else {
            for l in &self.lines {
                print_or_quit(l);
            }
        }
    }
}

/// Writes one line; exits quietly when the reader hung up (e.g. head).
fn print_or_quit(line: &str) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits a float")
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(rat_str(r))
}

pub fn rats_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_json).collect())
}

pub fn weight_json(w: &WeightVector) -> Value {
    rats_json(&w.coords)
}

pub fn gauss_json(z: &GaussRat) -> Value {
    json!({ "re": rat_str(&z.re), "im": rat_str(&z.im) })
}

/// Six significant digits; scientific notation outside a readable range.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e6).contains(&a) {
        return format!("{v:.5e}");
    }
    let leading = a.log10().floor() as i32;
    let decimals = (5 - leading).max(0) as usize;
    format!("{v:.decimals$}")
}

/// "p/q (= 0.500000)" for text output.
pub fn rat_both(r: &Rat) -> String {
    format!("{} (= {})", rat_str(r), sig6(rat_f64(r)))
}

/// Exact Gaussian rational as "a + bi" with signs folded in.
pub fn gauss_str(z: &GaussRat) -> String {
    use num::{Signed, Zero};
    if z.im.is_zero() {
        return rat_str(&z.re);
    }
    let im_abs = rat_str(&z.im.abs());
    let sign = if z.im.is_negative() { "-" } else { "+" };
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im_abs}i")
        } else {
            format!("{im_abs}i")
        }
    } else {
        format!("{} {sign} {im_abs}i", rat_str(&z.re))
    }
}
