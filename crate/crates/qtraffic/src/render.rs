//! SVG rendering of physical traces.
//!
//! Rows are physical qubits grouped into per-core horizontal bands, columns
//! are physical timeslices. Computation is red, communication white, idling
//! black, on a gray grid. Output is plain deterministic SVG text, so renders
//! of identical traces diff clean.

use std::fmt::Write as _;

use crate::mapper::MappedProgram;
use crate::trace::{Cell, TraceGrid};

const CELL_W: usize = 4;
const CELL_H: usize = 6;
const MARGIN_LEFT: usize = 56;
const MARGIN_TOP: usize = 28;
const CORE_GAP: usize = 4;

const COLOR_COMPUTE: &str = "#d62728";
const COLOR_COMMUNICATE: &str = "#ffffff";
const COLOR_IDLE: &str = "#000000";
const COLOR_GRID: &str = "#9c9c9c";

fn color(cell: Cell) -> &'static str {
    match cell {
        Cell::Compute => COLOR_COMPUTE,
        Cell::Communicate => COLOR_COMMUNICATE,
        Cell::Idle => COLOR_IDLE,
    }
}

/// Render a mapped program's physical trace.
pub fn render_svg(mp: &MappedProgram) -> String {
    render_grid(&mp.trace, mp.arch.capacity(), &mp.name)
}

/// Render any trace grid with `band` rows per horizontal band.
pub fn render_grid(grid: &TraceGrid, band: usize, title: &str) -> String {
    let rows = grid.rows();
    let cols = grid.cols().max(1);
    let bands = if band > 0 { rows.div_ceil(band) } else { 1 };
    let height = MARGIN_TOP + rows * CELL_H + bands.saturating_sub(1) * CORE_GAP + 10;
    let width = MARGIN_LEFT + cols * CELL_W + 10;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="{COLOR_GRID}"/>"#
    );
    let _ = writeln!(
        svg,
        r##"<text x="{MARGIN_LEFT}" y="18" font-family="monospace" font-size="12" fill="#111">{}</text>"##,
        xml_escape(title)
    );

    let row_y = |row: usize| {
        let band_index = row.checked_div(band).unwrap_or(0);
        MARGIN_TOP + row * CELL_H + band_index * CORE_GAP
    };

    for row in 0..rows {
        let y = row_y(row);
        if band > 0 && row % band == 0 {
            let core = row / band;
            let _ = writeln!(
                svg,
                r##"<text x="4" y="{}" font-family="monospace" font-size="9" fill="#111">core {core}</text>"##,
                y + CELL_H
            );
        }
        // One rect per run of equal cells keeps large traces compact.
        let cells = grid.row(row);
        let mut col = 0;
        while col < cells.len() {
            let cell = cells[col];
            let mut run = 1;
            while col + run < cells.len() && cells[col + run] == cell {
                run += 1;
            }
            let x = MARGIN_LEFT + col * CELL_W;
            let _ = writeln!(
                svg,
                r#"<rect x="{x}" y="{y}" width="{}" height="{}" fill="{}"/>"#,
                run * CELL_W - 1,
                CELL_H - 1,
                color(cell)
            );
            col += run;
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
