//! Machine-readable reports. JSON is the primary format and round-trips
//! through serde; TSV is header-first, tab-separated, unquoted.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<i64>,
    /// Generator matrices, row-major.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub divisor: i64,
    pub modulus: i64,
    pub solvable: bool,
    pub solution: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order: i64,
    pub method: String,
    pub n: i64,
    pub d_of_n: i64,
    pub pair: PairReport,
    pub certificate: Vec<TrialReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<OrderReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solvable: bool,
    pub solution: Option<Vec<i64>>,
    pub modulus: i64,
    pub gamma: Vec<i64>,
    pub target: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rank: usize,
    pub discriminant: i64,
    pub index_blowup: i64,
    pub index_glue: i64,
    pub weight_enumerator: String,
    pub preimage_ok: bool,
    pub pass: bool,
}

fn join_ints(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn solution_field(sol: &Option<Vec<i64>>) -> String {
    match sol {
        Some(xs) => join_ints(xs),
        None => "none".to_string(),
    }
}

impl OrderReport {
    pub fn tsv_header(cm: bool) -> String {
        if cm {
            "m\td\tn\td_of_n\torder\tmethod".to_string()
        } else {
            "n\td_of_n\torder\tmethod".to_string()
        }
    }

    pub fn tsv_row(&self, cm: bool) -> String {
        if cm {
            format!(
                "{}\t{}\t{}\t{}\t{}\t{}",
                self.pair.m.unwrap_or(0),
                self.pair.d.unwrap_or(0),
                self.n,
                self.d_of_n,
                self.order,
                self.method
            )
        } else {
            format!("{}\t{}\t{}\t{}", self.n, self.d_of_n, self.order, self.method)
        }
    }

    pub fn is_cm(&self) -> bool {
        self.pair.variant == "cm"
    }

    pub fn to_tsv(&self) -> String {
        let cm = self.is_cm();
        format!("{}\n{}\n", Self::tsv_header(cm), self.tsv_row(cm))
    }
}

impl SweepReport {
    pub fn to_tsv(&self) -> String {
        let cm = self.rows.first().map(OrderReport::is_cm).unwrap_or(false);
        let mut out = OrderReport::tsv_header(cm);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.tsv_row(cm));
            out.push('\n');
        }
        out
    }
}

impl SolveReport {
    pub fn to_tsv(&self) -> String {
        format!(
            "modulus\tsolvable\tsolution\n{}\t{}\t{}\n",
            self.modulus,
            self.solvable,
            solution_field(&self.solution)
        )
    }
}

impl VerifyReport {
    pub fn to_tsv(&self) -> String {
        format!(
            "rank\tdiscriminant\tindex_blowup\tindex_glue\tweight_enumerator\tpreimage_ok\tpass\n\
             {}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.rank,
            self.discriminant,
            self.index_blowup,
            self.index_glue,
            self.weight_enumerator,
            self.preimage_ok,
            self.pass
        )
    }
}
