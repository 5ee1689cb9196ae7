use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{Grading, QSeries, Rational};
use crate::error::{Error, Result};

fn number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn integer(n: &Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| Error::Malformed(format!("expected an integer, found {n}")))
}

/// Exact rational as a pair of JSON integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: Number,
    pub den: Number,
}

impl RationalRecord {
    pub fn new(x: &Rational) -> Self {
        RationalRecord {
            num: number(x.numer()),
            den: number(x.denom()),
        }
    }

    pub fn value(&self) -> Result<Rational> {
        let den = integer(&self.den)?;
        if den <= BigInt::from(0) {
            return Err(Error::Malformed("denominator must be positive".into()));
        }
        Ok(Rational::new(integer(&self.num)?, den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<i32>,
    pub num: Number,
    pub den: Number,
}

/// Serialized series: terms in canonical order plus truncation metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub num_vars: usize,
    pub order: RationalRecord,
    pub terms: Vec<TermRecord>,
}

impl QSeries {
    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            num_vars: self.num_vars(),
            order: RationalRecord::new(self.order()),
            terms: self
                .terms()
                .map(|(e, c)| TermRecord {
                    exponent: e.clone(),
                    num: number(c.numer()),
                    den: number(c.denom()),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &SeriesRecord, grading: &Arc<Grading>) -> Result<QSeries> {
        if record.num_vars != grading.num_vars() {
            return Err(Error::Shape(format!(
                "record has {} variables, grading {}",
                record.num_vars,
                grading.num_vars()
            )));
        }
        let mut terms = Vec::with_capacity(record.terms.len());
        for t in &record.terms {
            if t.exponent.len() != record.num_vars {
                return Err(Error::Shape("exponent length".into()));
            }
            let c = RationalRecord {
                num: t.num.clone(),
                den: t.den.clone(),
            }
            .value()?;
            terms.push((t.exponent.clone(), c));
        }
        Ok(QSeries::from_terms(grading, record.order.value()?, terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("series records always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn big_coefficients_round_trip() {
        let g = Arc::new(Grading::uniform(2));
        let huge = Rational::new(
            BigInt::from_str("123456789012345678901234567891").unwrap(),
            BigInt::from(2),
        );
        let f = QSeries::from_terms(&g, int(3), [(vec![1, 0], huge), (vec![0, 2], int(-1))]);
        let json = f.to_json();
        assert!(json.contains("123456789012345678901234567891"), "{json}");
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(QSeries::from_record(&back, &g).unwrap(), f);
    }

    #[test]
    fn fractional_numbers_are_rejected() {
        let g = Arc::new(Grading::uniform(1));
        let rec: SeriesRecord = serde_json::from_str(
            r#"{"num_vars":1,"order":{"num":2,"den":1},"terms":[{"exponent":[1],"num":1.5,"den":1}]}"#,
        )
        .unwrap();
        assert!(QSeries::from_record(&rec, &g).is_err());
    }
}
