//! Document language, canonical printer, JSON interchange and command-line
//! front end for `mvcurl-core`.

pub mod cli;
pub mod document;
pub mod error;
pub mod json;
pub mod printer;
pub mod syntax;

pub use cli::run;
pub use document::{Binding, Document, Value};
pub use error::{DslError, Span};
