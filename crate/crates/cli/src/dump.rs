//! Plain-text dump of the linear system.
//!
//! ```text
//! system original|cramer
//! field p n m
//! modulus c_0 ... c_n          (only when n > 1)
//! dim D
//! row O w_1,...,w_m tau rhs B : a_1 ... a_D
//! row N w_1,...,w_m - rhs B : a_1 ... a_D
//! ```
//!
//! Columns are ordered `(v, t)` with `v` in canonical order and `t` fastest.

use std::fmt::Write as _;

use grm_core::linsys::{LinearSystem, RowKind};
use grm_core::VecM;

fn codes(v: &VecM) -> String {
    v.coords()
        .iter()
        .map(|c| c.code().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn dump(s: &LinearSystem) -> String {
    let mut out = String::new();
    let kind = if s.is_original() {
        "original"
    } else {
        "cramer"
    };
    let field = s.field();
    let _ = writeln!(out, "system {kind}");
    let _ = writeln!(out, "field {} {} {}", field.p(), field.n(), s.m());
    if let Some(modulus) = field.modulus() {
        let cs: Vec<String> = modulus.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "modulus {}", cs.join(" "));
    }
    let _ = writeln!(out, "dim {}", s.dim());
    for (i, kind) in s.rows().iter().enumerate() {
        let label = match kind {
            RowKind::Original(h) => format!("O {} {}", codes(&h.w), h.tau.code()),
            RowKind::Normalization(w) => format!("N {} -", codes(w)),
        };
        let entries: Vec<&str> = s
            .row(i)
            .iter()
            .map(|&a| if a == 0 { "0" } else { "1" })
            .collect();
        let _ = writeln!(
            out,
            "row {label} rhs {} : {}",
            s.rhs()[i],
            entries.join(" ")
        );
    }
    out
}
