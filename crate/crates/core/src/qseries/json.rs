use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{QSeries, TICKS_PER_Q};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rational_to_string, Scalar};

/// Wire format: coefficients are `[rat, sqrt2]` string pairs on consecutive ticks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub tick_den: i64,
    pub min_tick: i64,
    pub prec_tick: i64,
    pub coeffs: Vec<[String; 2]>,
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        let coeffs = if s.is_zero() {
            Vec::new()
        } else {
            (s.min_tick..s.prec_tick)
                .map(|t| {
                    let c = s.coefficient_at_tick(t).expect("tick below precision");
                    [rational_to_string(c.rat()), rational_to_string(c.sqrt2_part())]
                })
                .collect()
        };
        Self {
            tick_den: TICKS_PER_Q,
            min_tick: s.min_tick,
            prec_tick: s.prec_tick,
            coeffs,
        }
    }
}

impl From<QSeries> for SeriesJson {
    fn from(s: QSeries) -> Self {
        Self::from(&s)
    }
}

impl TryFrom<SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.tick_den != TICKS_PER_Q {
            return Err(Error::Parse(format!("tick_den must be 48, got {}", j.tick_den)));
        }
        if j.min_tick > j.prec_tick {
            return Err(Error::Parse("min_tick exceeds prec_tick".into()));
        }
        if j.min_tick as i128 + j.coeffs.len() as i128 > j.prec_tick as i128 {
            return Err(Error::Parse("more coefficients than the precision allows".into()));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|[r, s]| -> Result<Scalar> {
                let r: BigRational = parse_rational(r)?;
                let s: BigRational = parse_rational(s)?;
                Ok(Scalar::new(r, s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_ticks(j.min_tick, j.prec_tick, coeffs))
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(deserializer)?;
        QSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl QSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_sqrt2() {
        let s = QSeries::from_terms(
            &[
                (-1, Scalar::from_ratio(-3, 4)),
                (23, Scalar::sqrt2()),
                (47, Scalar::from_int(5)),
            ],
            96,
        );
        let text = s.to_json();
        assert!(text.contains("\"tick_den\":48"));
        assert!(text.contains("[\"-3/4\",\"0/1\"]"));
        assert_eq!(QSeries::from_json(&text).unwrap(), s);
    }

    #[test]
    fn rejects_bad_grid() {
        let bad = r#"{"tick_den":24,"min_tick":0,"prec_tick":1,"coeffs":[["1/1","0/1"]]}"#;
        assert!(QSeries::from_json(bad).is_err());
        let long = r#"{"tick_den":48,"min_tick":0,"prec_tick":1,"coeffs":[["1","0"],["1","0"]]}"#;
        assert!(QSeries::from_json(long).is_err());
    }

    #[test]
    fn zero_series() {
        let z = QSeries::zero(48);
        assert_eq!(QSeries::from_json(&z.to_json()).unwrap(), z);
    }
}
