use anyhow::{bail, Result};
use clap::ValueEnum;
use serde_json::{json, Value};
use svoa_core::qseries::tick_to_exponent;
use svoa_core::scalar::rational_to_string;
use svoa_core::svoa::format_rational;
use svoa_core::{QSeries, Scalar};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One result in every format the command supports.
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
}

impl Rendered {
    pub fn emit(self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => self.text,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => match self.csv {
                Some(csv) => csv,
                None => bail!("csv output is not available for this command"),
            },
        })
    }
}

pub struct Outcome {
    pub rendered: Rendered,
    /// Machine-readable record of a statement that did not hold.
    pub failure: Option<Value>,
}

impl Outcome {
    pub fn ok(rendered: Rendered) -> Self {
        Self {
            rendered,
            failure: None,
        }
    }
}

/// Rational scalars as a single string, others as `{rat, sqrt2}`.
pub fn scalar_json(s: &Scalar) -> Value {
    if s.is_plain() {
        Value::String(format_rational(s.rat()))
    } else {
        json!({ "rat": rational_to_string(s.rat()), "sqrt2": rational_to_string(s.sqrt2_part()) })
    }
}

/// `exponent,rational,sqrt2` for each tick below the precision.
pub fn series_csv(s: &QSeries) -> String {
    let mut out = String::from("exponent,rational,sqrt2\n");
    for (t, c) in s.nonzero_terms() {
        out.push_str(&format!(
            "{},{},{}\n",
            format_rational(&tick_to_exponent(t)),
            format_rational(c.rat()),
            format_rational(c.sqrt2_part())
        ));
    }
    out
}
