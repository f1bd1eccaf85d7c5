//! Problem files, JSON reports and SVG figures for interval LCP solution sets.

pub mod analysis;
pub mod cli;
pub mod problem;
pub mod report;
pub mod svg;
