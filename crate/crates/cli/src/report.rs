//! Human-readable and JSON renderings of command results.

use std::fmt::Write as _;

use grm_core::{distances, DistanceProfile, FieldSpec};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub m: usize,
    pub modulus: Option<Vec<u32>>,
}

impl FieldInfo {
    pub fn new(field: &FieldSpec, m: usize) -> Self {
        FieldInfo {
            p: field.p(),
            n: field.n(),
            q: field.q(),
            m,
            modulus: field.modulus().map(<[u32]>::to_vec),
        }
    }

    fn describe(&self) -> String {
        match &self.modulus {
            Some(modulus) => format!(
                "F_{} (p = {}, n = {}, modulus {:?}), m = {}",
                self.q, self.p, self.n, modulus, self.m
            ),
            None => format!("F_{}, m = {}", self.q, self.m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Codeword {
    pub v: Vec<u32>,
    pub t: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistogramBin {
    pub distance: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub command: &'static str,
    pub field: FieldInfo,
    pub method: String,
    /// `counts[index(v)][code(t)] = N_{v,t}`.
    pub counts: Vec<Vec<u64>>,
    /// `distances[index(v)][code(t)] = q^m - N_{v,t}`.
    pub distances: Vec<Vec<u64>>,
    pub min_distance: u64,
    pub argmin: Vec<Codeword>,
    pub histogram: Vec<HistogramBin>,
}

impl ProfileReport {
    pub fn new(field: &FieldSpec, m: usize, method: &str, profile: &DistanceProfile) -> Self {
        let summary = distances(profile);
        let q = profile.q();
        let point = |v: usize| -> Vec<u32> {
            field
                .vec_of_index(v, m)
                .expect("row index in range")
                .coords()
                .iter()
                .map(|c| c.code())
                .collect()
        };
        ProfileReport {
            command: "profile",
            field: FieldInfo::new(field, m),
            method: method.to_string(),
            counts: profile.rows().map(<[u64]>::to_vec).collect(),
            distances: summary.matrix.chunks(q).map(<[u64]>::to_vec).collect(),
            min_distance: summary.min,
            argmin: summary
                .argmin
                .iter()
                .map(|&(v, t)| Codeword { v: point(v), t })
                .collect(),
            histogram: summary
                .histogram
                .iter()
                .map(|(&distance, &count)| HistogramBin { distance, count })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, field: &FieldSpec) -> String {
        let mut out = String::new();
        let m = self.field.m;
        let _ = writeln!(out, "field     {}", self.field.describe());
        let _ = writeln!(out, "method    {}", self.method);
        let _ = writeln!(out, "distance  {}", self.min_distance);
        let words: Vec<String> = self
            .argmin
            .iter()
            .map(|c| format!("<u,{}>+{}", codes(&c.v), c.t))
            .collect();
        let _ = writeln!(out, "nearest   {}", words.join(" "));
        let bins: Vec<String> = self
            .histogram
            .iter()
            .map(|b| format!("{}:{}", b.distance, b.count))
            .collect();
        let _ = writeln!(out, "histogram {}", bins.join(" "));
        for (title, table) in [
            ("agreements N[v][t]", &self.counts),
            ("distances d[v][t]", &self.distances),
        ] {
            let _ = writeln!(out, "\n{title}");
            let label_width = (2 * m + 1).max(3);
            let _ = write!(out, "{:>label_width$}", "v\\t");
            for t in 0..self.field.q {
                let _ = write!(out, " {t:>5}");
            }
            let _ = writeln!(out);
            for (v, row) in table.iter().enumerate() {
                let point = field.vec_of_index(v, m).expect("row index in range");
                let label = codes(&point.coords().iter().map(|c| c.code()).collect::<Vec<_>>());
                let _ = write!(out, "{label:>label_width$}");
                for x in row {
                    let _ = write!(out, " {x:>5}");
                }
                let _ = writeln!(out);
            }
        }
        out
    }
}

fn codes(v: &[u32]) -> String {
    format!(
        "({})",
        v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    )
}
