//! Serializable records for tables and JSON output. Rationals are written
//! as "p/q" strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::Rational;
use crate::cusp_constants::ConstantVector;
use crate::cusps::{self, CuspRep};
use crate::eisenstein::EisTriple;
use crate::error::Result;
use crate::level::Level;
use crate::orders;
use crate::qseries::QSeries;

pub(crate) fn ser_rational<S: Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspRecord {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub x: u64,
    pub num: i64,
    pub den: u64,
    pub width0: u64,
    pub width1: u64,
}

impl CuspRecord {
    pub fn new(rep: &CuspRep, level: Level) -> Self {
        let p = cusps::to_point(rep, level);
        Self {
            r: rep.r,
            s: rep.s,
            t: rep.t,
            x: rep.x,
            num: p.a(),
            den: p.c(),
            width0: cusps::width_gamma0(rep),
            width1: cusps::width_gamma1(rep),
        }
    }

    pub fn rep(&self) -> CuspRep {
        CuspRep::new(self.r, self.s, self.t, self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "L")]
    pub l: u64,
    pub f: u64,
}

impl From<&EisTriple> for TripleRecord {
    fn from(t: &EisTriple) -> Self {
        Self {
            d: t.level().d(),
            c: t.level().c(),
            m: t.m(),
            l: t.l(),
            f: t.f(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QExpRecord {
    #[serde(flatten)]
    pub triple: TripleRecord,
    pub prec: usize,
    pub coeffs: Vec<String>,
}

impl QExpRecord {
    pub fn new(triple: &EisTriple, series: &QSeries) -> Self {
        Self {
            triple: triple.into(),
            prec: series.precision(),
            coeffs: series.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantRecord {
    pub cusp: CuspRecord,
    #[serde(serialize_with = "ser_rational")]
    pub rho: Rational,
    pub width: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantsRecord {
    pub triple: TripleRecord,
    pub unit: &'static str,
    pub entries: Vec<ConstantRecord>,
}

impl From<&ConstantVector> for ConstantsRecord {
    fn from(v: &ConstantVector) -> Self {
        let level = v.triple.level();
        Self {
            triple: (&v.triple).into(),
            unit: "n_chi",
            entries: v
                .entries
                .iter()
                .map(|e| ConstantRecord {
                    cusp: CuspRecord::new(&e.cusp, level),
                    rho: e.rho.clone(),
                    width: e.width,
                })
                .collect(),
        }
    }
}

pub const TABLE_HEADER: &str = "D,C,M,L,f,A,d_chi_num,d_chi_den,order_away_6f,index_prediction";

/// One row of the order table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub triple: TripleRecord,
    #[serde(rename = "A")]
    pub a: u64,
    pub d_chi_num: i64,
    pub d_chi_den: u64,
    pub order_away_6f: u64,
    pub index_prediction: u64,
}

impl TableRow {
    pub fn new(triple: &EisTriple) -> Result<Self> {
        let d = triple.chi().d_chi();
        let away = orders::order_away_6f(triple)?;
        let index = orders::index_prediction(triple)?;
        Ok(Self {
            triple: triple.into(),
            a: orders::lattice_a(triple),
            d_chi_num: d.numer().to_i64().expect("small numerator"),
            d_chi_den: d.denom().to_u64().expect("small denominator"),
            order_away_6f: away.value.to_u64().expect("small order"),
            index_prediction: index.value.to_u64().expect("small order"),
        })
    }

    pub fn csv_line(&self) -> String {
        let t = &self.triple;
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            t.d,
            t.c,
            t.m,
            t.l,
            t.f,
            self.a,
            self.d_chi_num,
            self.d_chi_den,
            self.order_away_6f,
            self.index_prediction
        )
    }
}
