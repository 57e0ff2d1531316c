//! Universe enumeration and the law-checking harness.

pub mod enumerate;
pub mod factor;
pub mod laws;
pub mod report;
pub mod run;
