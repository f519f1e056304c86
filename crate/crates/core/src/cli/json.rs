//! JSON records for the domain types and the canonical report writer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::ratfun::{Poly, RatFun, RootMultiset};
use crate::symbols::ToeplitzSymbol;
use crate::tolerance::ToleranceConfig;

/// A complex number as `[re, im]`.
pub type ComplexRecord = [f64; 2];

fn to_c(c: &ComplexRecord) -> Complex64 {
    Complex64::new(c[0], c[1])
}

fn from_c(c: Complex64) -> ComplexRecord {
    [c.re, c.im]
}

fn one_poly() -> Vec<ComplexRecord> {
    vec![[1.0, 0.0]]
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        path: path.to_string(),
        message: message.into(),
    }
}

fn check_finite(path: &str, cs: &[ComplexRecord]) -> Result<()> {
    match cs
        .iter()
        .position(|c| !c[0].is_finite() || !c[1].is_finite())
    {
        Some(i) => Err(invalid(
            &format!("{path}[{i}]"),
            "coefficient is not finite",
        )),
        None => Ok(()),
    }
}

/// Rational function with ascending coefficient lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatRecord {
    pub num: Vec<ComplexRecord>,
    #[serde(default = "one_poly")]
    pub den: Vec<ComplexRecord>,
}

impl RatRecord {
    pub fn one() -> Self {
        RatRecord {
            num: one_poly(),
            den: one_poly(),
        }
    }

    pub fn from_ratfun(f: &RatFun) -> Self {
        RatRecord {
            num: f.num().coeffs().iter().copied().map(from_c).collect(),
            den: f.den().coeffs().iter().copied().map(from_c).collect(),
        }
    }

    pub fn to_ratfun(&self, path: &str, tol: &ToleranceConfig) -> Result<RatFun> {
        check_finite(&format!("{path}.num"), &self.num)?;
        check_finite(&format!("{path}.den"), &self.den)?;
        let num = Poly::new(self.num.iter().map(to_c).collect());
        let den = Poly::new(self.den.iter().map(to_c).collect());
        RatFun::new(num, den, tol).map_err(|e| invalid(path, e.to_string()))
    }
}

/// Finite Blaschke product as `[re, im, multiplicity]` zeros and a
/// unimodular constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeRecord {
    pub zeros: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<ComplexRecord>,
}

impl BlaschkeRecord {
    pub fn from_blaschke(b: &BlaschkeProduct) -> Self {
        let u = b.unimodular();
        BlaschkeRecord {
            zeros: b
                .zeros()
                .iter()
                .map(|&(a, m)| [a.re, a.im, m as f64])
                .collect(),
            unimodular: (u != Complex64::new(1.0, 0.0)).then(|| from_c(u)),
        }
    }

    pub fn to_blaschke(&self, path: &str, tol: &ToleranceConfig) -> Result<BlaschkeProduct> {
        let mut zeros = RootMultiset::new();
        for (i, z) in self.zeros.iter().enumerate() {
            let p = format!("{path}.zeros[{i}]");
            if !z.iter().all(|x| x.is_finite()) {
                return Err(invalid(&p, "entries must be finite"));
            }
            if z[2] < 1.0 || z[2].fract() != 0.0 {
                return Err(invalid(&p, "multiplicity must be a positive integer"));
            }
            zeros.insert(Complex64::new(z[0], z[1]), z[2] as usize, tol);
        }
        let u = self
            .unimodular
            .map(|c| to_c(&c))
            .unwrap_or(Complex64::new(1.0, 0.0));
        BlaschkeProduct::new(zeros, u, tol).map_err(|e| invalid(path, e.to_string()))
    }
}

/// The symbol `conj(anti) * ana * z^power`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolRecord {
    #[serde(default = "RatRecord::one")]
    pub anti: RatRecord,
    #[serde(default = "RatRecord::one")]
    pub ana: RatRecord,
    #[serde(default)]
    pub power: i32,
}

impl SymbolRecord {
    pub fn from_symbol(s: &ToeplitzSymbol) -> Self {
        SymbolRecord {
            anti: RatRecord::from_ratfun(s.anti()),
            ana: RatRecord::from_ratfun(s.ana()),
            power: s.power(),
        }
    }

    pub fn to_symbol(&self, path: &str, tol: &ToleranceConfig) -> Result<ToeplitzSymbol> {
        let anti = self.anti.to_ratfun(&format!("{path}.anti"), tol)?;
        let ana = self.ana.to_ratfun(&format!("{path}.ana"), tol)?;
        ToeplitzSymbol::new(anti, ana, self.power, tol).map_err(|e| invalid(path, e.to_string()))
    }
}

pub fn rat_value(f: &RatFun) -> Value {
    serde_json::to_value(RatRecord::from_ratfun(f)).expect("records serialize")
}

pub fn blaschke_value(b: &BlaschkeProduct) -> Value {
    serde_json::to_value(BlaschkeRecord::from_blaschke(b)).expect("records serialize")
}

pub fn symbol_value(s: &ToeplitzSymbol) -> Value {
    serde_json::to_value(SymbolRecord::from_symbol(s)).expect("records serialize")
}

/// Polynomial in descending powers with coefficients rounded when they are
/// within `1e-9` of an integer, e.g. `z^2+4z`.
pub fn poly_string(p: &Poly) -> String {
    let fmt_real = |x: f64| {
        if (x - x.round()).abs() < 1e-9 {
            format!("{}", x.round() as i64)
        } else {
            format!("{x}")
        }
    };
    let mut out = String::new();
    for k in (0..=p.degree()).rev() {
        let c = p.coeff(k);
        if c.norm() < 1e-12 {
            continue;
        }
        let (coef, negative) = if c.im.abs() < 1e-12 {
            (fmt_real(c.re.abs()), c.re < 0.0)
        } else {
            (format!("({}{:+}i)", fmt_real(c.re), c.im), false)
        };
        if !out.is_empty() {
            out.push(if negative { '-' } else { '+' });
        } else if negative {
            out.push('-');
        }
        let show_coef = coef != "1" || k == 0;
        if show_coef {
            out.push_str(&coef);
        }
        match k {
            0 => {}
            1 => out.push('z'),
            _ => out.push_str(&format!("z^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Serializes with sorted keys, two-space indentation and every float
/// written with 17 significant digits.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().expect("f64 number")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            let flat = items.iter().all(|x| !x.is_array() && !x.is_object());
            if flat {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("strings serialize"));
                out.push_str(": ");
                write_value(&map[k.as_str()], indent + 1, out);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
