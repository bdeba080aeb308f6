//! Deterministic text and JSON rendering of the library types.

use num_traits::One;
use serde_json::{json, Value};

use immaculatum::fan::StackyFan;
use immaculatum::picard::{DivisorClass, PicardData};
use immaculatum::{Int, Rat};

/// Exact JSON number from an arbitrary-precision integer.
pub fn json_int(v: &Int) -> Value {
    serde_json::from_str(&v.to_string()).expect("integer token is valid JSON")
}

pub fn json_int_vec(v: &[Int]) -> Value {
    Value::Array(v.iter().map(json_int).collect())
}

/// Rationals serialize as exact integers when possible, else "p/q" strings.
pub fn json_rat(r: &Rat) -> Value {
    if r.denom().is_one() {
        json_int(r.numer())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn json_rat_vec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(json_rat).collect())
}

pub fn json_class(pic: &PicardData, class: &DivisorClass) -> Value {
    json!({
        "free": json_int_vec(&class.free),
        "torsion": json_int_vec(&class.torsion),
        "divisor_rep": json_int_vec(&pic.divisor_rep(class)),
    })
}

pub fn json_fan(fan: &StackyFan) -> Value {
    json!({
        "name": fan.name(),
        "dim": fan.dim(),
        "rays": fan.rays().iter().map(|r| json_int_vec(r)).collect::<Vec<_>>(),
        "max_cones": fan.max_cones(),
    })
}

pub fn text_int_vec(v: &[Int]) -> String {
    let items: Vec<String> = v.iter().map(Int::to_string).collect();
    format!("({})", items.join(","))
}

pub fn text_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn text_rat_vec(v: &[Rat]) -> String {
    let items: Vec<String> = v.iter().map(text_rat).collect();
    format!("({})", items.join(","))
}

/// Class rendered in the deterministic basis and as a divisor representative.
pub fn text_class(pic: &PicardData, class: &DivisorClass) -> String {
    let mut s = text_int_vec(&class.free);
    if !class.torsion.is_empty() {
        let t: Vec<String> = class.torsion.iter().map(Int::to_string).collect();
        s = format!("{};{}", &s[..s.len() - 1], t.join(","));
        s.push(')');
    }
    format!("class {} ~ divisor {}", s, text_int_vec(&pic.divisor_rep(class)))
}

/// Fixed-precision decimal rendering of an exact rational (for SVG).
pub fn rat_fixed(r: &Rat, decimals: u32) -> String {
    let scale = Int::from(10u32).pow(decimals);
    let scaled = r * Rat::from_integer(scale.clone());
    // round half away from zero, deterministically
    let doubled = &scaled + &scaled;
    let rounded = if scaled >= Rat::from_integer(Int::from(0)) {
        ((doubled + Rat::from_integer(Int::from(1))) / Rat::from_integer(Int::from(2))).floor()
    } else {
        ((doubled - Rat::from_integer(Int::from(1))) / Rat::from_integer(Int::from(2))).ceil()
    };
    let rounded = rounded.to_integer();
    let negative = rounded < Int::from(0);
    let abs = if negative { -rounded.clone() } else { rounded.clone() };
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < decimals {
        frac.insert(0, '0');
    }
    format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac)
}
