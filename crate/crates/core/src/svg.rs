//! Static SVG rendering of lozenge and domino tilings. Coordinates are
//! integers; every tile is one element carrying a class named after its kind.

use std::fmt::Write;

use crate::aztec::{DominoKind, DominoTiling};
use crate::growth::{LozengeKind, LozengeTiling};

const MARGIN: i64 = 10;
/// Lattice step along a horizontal line.
const LOZENGE_DX: i64 = 30;
/// Height of one strip, `30·√3/2` rounded.
const LOZENGE_DY: i64 = 26;
const DOMINO_CELL: i64 = 20;

fn lozenge_class(k: LozengeKind) -> &'static str {
    match k {
        LozengeKind::LightGray => "light-gray",
        LozengeKind::White => "white",
        LozengeKind::DarkGray => "dark-gray",
    }
}

fn domino_class(k: DominoKind) -> &'static str {
    match k {
        DominoKind::LightGray => "light-gray",
        DominoKind::MiddleGray => "middle-gray",
        DominoKind::DarkGray => "dark-gray",
        DominoKind::White => "white",
    }
}

fn header(out: &mut String, width: i64, height: i64, style: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}"><style>{style}</style>"#
    );
}

/// Lattice vertex `(i, j)` is drawn at `(30 i + 15 j, -26 j)` before shifting
/// into the canvas, so the strips are horizontal and up is up.
pub fn render_lozenge(t: &LozengeTiling) -> String {
    let project = |(i, j): (i64, i64)| (LOZENGE_DX * i + LOZENGE_DX / 2 * j, -LOZENGE_DY * j);
    let polys: Vec<(LozengeKind, [(i64, i64); 4])> =
        t.tiles.iter().map(|l| (l.kind, l.vertices().map(project))).collect();
    let xs = polys.iter().flat_map(|(_, p)| p.iter().map(|v| v.0));
    let ys = polys.iter().flat_map(|(_, p)| p.iter().map(|v| v.1));
    let (x0, x1) = xs.fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((i64::MAX, i64::MIN), |(a, b), y| (a.min(y), b.max(y)));
    let (x0, x1, y0, y1) = if polys.is_empty() { (0, 0, 0, 0) } else { (x0, x1, y0, y1) };
    let mut out = String::new();
    header(
        &mut out,
        x1 - x0 + 2 * MARGIN,
        y1 - y0 + 2 * MARGIN,
        "polygon{stroke:#000;stroke-width:1}.light-gray{fill:#d0d0d0}.white{fill:#fff}.dark-gray{fill:#707070}",
    );
    for (kind, p) in polys {
        let pts: Vec<String> = p.iter().map(|(x, y)| format!("{},{}", x - x0 + MARGIN, y - y0 + MARGIN)).collect();
        let _ = write!(out, r#"<polygon class="{}" points="{}"/>"#, lozenge_class(kind), pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}

/// Cell `(a, b)` of the order-`n` diamond becomes the square with top-left
/// corner `(20 (a + n), 20 (n - 1 - b))`.
pub fn render_domino(t: &DominoTiling) -> String {
    let n = t.order as i64;
    let side = 2 * n * DOMINO_CELL + 2 * MARGIN;
    let mut out = String::new();
    header(
        &mut out,
        side,
        side,
        "rect{stroke:#000;stroke-width:1}.light-gray{fill:#d0d0d0}.middle-gray{fill:#a0a0a0}.dark-gray{fill:#505050}.white{fill:#fff}",
    );
    for d in &t.tiles {
        let a = d.cells[0].0.min(d.cells[1].0);
        let b = d.cells[0].1.max(d.cells[1].1);
        let (w, h) = if d.is_horizontal() { (2, 1) } else { (1, 2) };
        let x = DOMINO_CELL * (a + n) + MARGIN;
        let y = DOMINO_CELL * (n - 1 - b) + MARGIN;
        let _ = write!(
            out,
            r#"<rect class="{}" x="{x}" y="{y}" width="{}" height="{}"/>"#,
            domino_class(d.kind),
            w * DOMINO_CELL,
            h * DOMINO_CELL
        );
    }
    out.push_str("</svg>\n");
    out
}
