//! Text formats, decimal rendering and the thread-capped parallel driver
//! behind the `contentmax` command-line tool.

pub mod decimal;
pub mod formats;
pub mod parallel;
