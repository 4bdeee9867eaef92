//! IO companion to `torushom-core`: JSON/text/LaTeX value formats and the
//! persistent memo cache. The `torushom` binary lives in `main.rs`.

pub mod cache;
pub mod formats;
