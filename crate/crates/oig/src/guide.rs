//! Guide snippets are doc-tested here.
