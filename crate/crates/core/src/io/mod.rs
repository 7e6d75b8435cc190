//! Category documents (JSON), poset expansion and DOT export.

mod document;
mod dot;

pub use document::{
    expand_poset, from_category, parse_category_document, poset_arrow_id, serialize_document,
    to_category, ArrowEntry, CategoryDocument, DocumentError, ObjectEntry, PosetEntry,
};
pub use dot::{basic_set_color, export_dot, GRADIENT_COLOR};
