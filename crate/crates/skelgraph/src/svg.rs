//! SVG 1.1 overlays: character pixels as a gray layer, edges as segments,
//! nodes as dots. User units are image pixels with `y` down; pixel `(x, y)`
//! covers the unit square centred on `(x, y)`.

use std::fmt::Write as _;

use skelgraph_core::{BinaryImage, SkeletonGraph};

use crate::json::format_coord;

/// Renders `graph`, optionally over the character it was learned from.
pub fn render_svg(graph: &SkeletonGraph, background: Option<&BinaryImage>) -> String {
    let (w, h) = (graph.width(), graph.height());
    let scale = (600 / w.max(h)).max(1);
    let unit = w.max(h) as f64 / 100.0;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"-0.5 -0.5 {w} {h}\">",
        w * scale,
        h * scale
    )
    .unwrap();
    writeln!(
        out,
        "<rect x=\"-0.5\" y=\"-0.5\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>"
    )
    .unwrap();
    if let Some(img) = background {
        out.push_str("<g id=\"pixels\" fill=\"#c8c8c8\" shape-rendering=\"crispEdges\">\n");
        for (y, x0, len) in runs(img) {
            writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{len}\" height=\"1\"/>",
                x0 as f64 - 0.5,
                y as f64 - 0.5
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    writeln!(
        out,
        "<g id=\"edges\" stroke=\"#1f4e9c\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        format_coord(0.8 * unit)
    )
    .unwrap();
    for &(a, b) in graph.edges() {
        let (p, q) = (
            graph.position(a).expect("valid graph"),
            graph.position(b).expect("valid graph"),
        );
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            format_coord(p.x),
            format_coord(p.y),
            format_coord(q.x),
            format_coord(q.y)
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    writeln!(out, "<g id=\"nodes\" fill=\"#d62728\">").unwrap();
    let r = format_coord(1.5 * unit);
    for n in graph.nodes() {
        writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\"/>",
            format_coord(n.pos.x),
            format_coord(n.pos.y)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Horizontal foreground runs as `(row, first column, length)`.
fn runs(img: &BinaryImage) -> Vec<(u32, u32, u32)> {
    let mut out: Vec<(u32, u32, u32)> = Vec::new();
    let mut cells: Vec<(u32, u32)> = img.foreground().iter().map(|&(x, y)| (y, x)).collect();
    cells.sort_unstable();
    for (y, x) in cells {
        match out.last_mut() {
            Some((ry, rx, len)) if *ry == y && *rx + *len == x => *len += 1,
            _ => out.push((y, x, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use skelgraph_core::{Node, Point};

    #[test]
    fn empty_graph_has_no_marks() {
        let svg = render_svg(&SkeletonGraph::new(4, 4, vec![], []).unwrap(), None);
        assert!(!svg.contains("<circle") && !svg.contains("<line"));
        assert!(svg.contains("viewBox=\"-0.5 -0.5 4 4\""));
    }

    #[test]
    fn circle_centered_on_node() {
        let g = SkeletonGraph::new(
            10,
            10,
            vec![Node {
                id: 0,
                pos: Point::new(3.0, 4.0),
            }],
            [],
        )
        .unwrap();
        assert!(render_svg(&g, None).contains("<circle cx=\"3.0000\" cy=\"4.0000\""));
    }

    #[test]
    fn pixel_runs() {
        let img = BinaryImage::new(6, 2, [(0, 0), (1, 0), (2, 0), (4, 0), (1, 1)]).unwrap();
        assert_eq!(runs(&img), vec![(0, 0, 3), (0, 4, 1), (1, 1, 1)]);
    }
}
