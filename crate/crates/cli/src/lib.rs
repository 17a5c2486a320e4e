//! Library half of the `grm` command line tool.

pub mod dump;
pub mod format;
pub mod gen;
pub mod report;
pub mod verify;

use std::path::Path;

use grm_core::{
    arrangement_of, build_cramer, build_system, covering_radius, incidence_counts,
    profile_bruteforce, profile_via_fast_transform, profile_via_linsys, profile_via_transform,
    DistanceProfile, FTable, FieldSpec,
};
use serde::Serialize;
use thiserror::Error;

use crate::format::FormatError;
use crate::report::{FieldInfo, ProfileReport};
use crate::verify::check_agreement;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] grm_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("methods disagree: {0}")]
    Disagreement(String),
}

pub fn read_function(path: &Path) -> Result<FTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(format::parse(&text)?)
}

/// Writes to `path`, or stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Transform,
    Fast,
    Brute,
    Linsys,
    Arrangement,
    All,
}

impl Method {
    pub const SINGLE: [Method; 5] = [
        Method::Brute,
        Method::Transform,
        Method::Fast,
        Method::Linsys,
        Method::Arrangement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Transform => "transform",
            Method::Fast => "fast",
            Method::Brute => "brute",
            Method::Linsys => "linsys",
            Method::Arrangement => "arrangement",
            Method::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Method, CliError> {
        Method::SINGLE
            .into_iter()
            .chain([Method::All])
            .find(|m| m.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown method `{s}`")))
    }
}

fn profile_single(f: &FTable, method: Method) -> Result<DistanceProfile, CliError> {
    Ok(match method {
        Method::Transform => profile_via_transform(f)?,
        Method::Fast => profile_via_fast_transform(f)?,
        Method::Brute => profile_bruteforce(f)?,
        Method::Linsys => profile_via_linsys(f)?,
        Method::Arrangement => incidence_counts(&arrangement_of(f)?)?,
        Method::All => unreachable!("handled by compute_profile"),
    })
}

/// Computes the distance profile with `method`; `All` runs every method and
/// fails unless they agree entrywise.
pub fn compute_profile(f: &FTable, method: Method) -> Result<DistanceProfile, CliError> {
    if method != Method::All {
        return profile_single(f, method);
    }
    let oracle = profile_bruteforce(f)?;
    for m in &Method::SINGLE[1..] {
        let p = profile_single(f, *m)?;
        let check = check_agreement(m.name(), &p, &oracle);
        if check.status != verify::Status::Pass {
            return Err(CliError::Disagreement(format!(
                "{}: {}",
                m.name(),
                check.detail
            )));
        }
    }
    Ok(oracle)
}

pub fn profile_report(f: &FTable, method: Method) -> Result<ProfileReport, CliError> {
    let profile = compute_profile(f, method)?;
    Ok(ProfileReport::new(
        f.field(),
        f.m(),
        method.name(),
        &profile,
    ))
}

pub fn dump_system(f: &FTable, cramer: bool) -> Result<String, CliError> {
    let s = if cramer {
        build_cramer(f)?
    } else {
        build_system(f)?
    };
    Ok(dump::dump(&s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub command: &'static str,
    pub field: FieldInfo,
    pub radius: u64,
    pub attained_by: u64,
    pub functions_searched: u64,
    /// Body of the first function at distance `radius`.
    pub witness: Vec<u32>,
}

impl CoveringReport {
    pub fn to_text(&self) -> String {
        format!(
            "covering radius {}\nattained by     {} of {} functions\nwitness         {}\n",
            self.radius,
            self.attained_by,
            self.functions_searched,
            self.witness
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

pub fn covering_report(field: &FieldSpec, m: usize) -> Result<CoveringReport, CliError> {
    let c = covering_radius(field, m)?;
    Ok(CoveringReport {
        command: "covering-radius",
        field: FieldInfo::new(field, m),
        radius: c.radius,
        attained_by: c.attained_by,
        functions_searched: c.functions_searched,
        witness: c.witness.codes(),
    })
}
