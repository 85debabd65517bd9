use std::fmt::Write as _;

use super::TamedExtension;
use crate::error::Result;
use crate::matroid::{Matroid, MatroidFile};
use crate::tree::Vertex;

/// Which tree edge an extension element stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeMapEntry {
    pub element: usize,
    pub bottom: Vertex,
    pub top: Vertex,
}

impl TamedExtension {
    pub fn edge_map(&self) -> Vec<EdgeMapEntry> {
        self.tree()
            .edges()
            .iter()
            .map(|v| EdgeMapEntry {
                element: self.edge_element(v),
                bottom: v,
                top: self.tree().parent(v).expect("edge has a top vertex"),
            })
            .collect()
    }
}

/// The extension as an explicit matroid file listing every basis, followed by
/// a comment block mapping edge elements to tree edges. The comment block
/// keeps the output readable by the ordinary matroid parser.
pub fn extension_to_text(ext: &TamedExtension, cap: usize) -> Result<String> {
    let file = MatroidFile::Explicit {
        n: ext.len(),
        bases: ext.bases(cap)?,
    };
    let mut out = file.to_text();
    let _ = writeln!(out, "# edge-map: element -> tree edge (bottom vertex, top vertex)");
    for entry in ext.edge_map() {
        let _ = writeln!(out, "# edge {} v{} v{}", entry.element, entry.bottom, entry.top);
    }
    Ok(out)
}
