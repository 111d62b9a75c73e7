// matrix and table code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod conductor;
pub mod cyclotomic;
pub mod fixtures;
pub mod format;
pub mod group;
pub mod linalg;
pub mod numtheory;
pub mod oracle;
pub mod ramification;
