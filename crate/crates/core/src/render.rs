//! Minimal SVG rendering of a placement: area frame, coverage disks,
//! router-router links, routers, and clients (colored by coverage state).
//!
//! Plain shapes with inline attributes only; output is a pure function of
//! the scenario and placement, so repeated renders are byte-identical.

use crate::netmodel::{compute_coverage, Placement};
use crate::scenario::Scenario;

/// Renders the network induced by `p` as a standalone SVG document.
pub fn render_svg(s: &Scenario, p: &Placement) -> String {
    let area = s.area();
    let cr = s.coverage_radius();
    let cov = compute_coverage(s, p);
    let link2 = (2.0 * cr) * (2.0 * cr);

    // Margin leaves edge disks visible.
    let margin = cr + 0.02 * area.width.max(area.height);
    let vb_x = -margin;
    let vb_y = -margin;
    let vb_w = area.width + 2.0 * margin;
    let vb_h = area.height + 2.0 * margin;
    let px_w = 800.0;
    let px_h = (px_w * vb_h / vb_w * 100.0).round() / 100.0;

    let node_r = 0.006 * area.width.max(area.height);
    let client_r = 0.004 * area.width.max(area.height);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{px_w}\" height=\"{px_h}\" \
         viewBox=\"{vb_x} {vb_y} {vb_w} {vb_h}\">\n"
    ));
    // Flip the y axis so the origin sits bottom-left.
    out.push_str(&format!(
        "<g transform=\"translate(0,{}) scale(1,-1)\">\n",
        area.height
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"{}\"/>\n",
        area.width,
        area.height,
        0.002 * area.width.max(area.height)
    ));

    for r in p.routers() {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{cr}\" fill=\"green\" fill-opacity=\"0.08\" stroke=\"green\" stroke-opacity=\"0.35\" stroke-width=\"{}\"/>\n",
            r.x,
            r.y,
            0.001 * area.width.max(area.height)
        ));
    }

    let routers = p.routers();
    for i in 0..routers.len() {
        for j in (i + 1)..routers.len() {
            if routers[i].dist2(&routers[j]) <= link2 {
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"{}\"/>\n",
                    routers[i].x,
                    routers[i].y,
                    routers[j].x,
                    routers[j].y,
                    0.0025 * area.width.max(area.height)
                ));
            }
        }
    }

    for (ci, c) in s.clients().iter().enumerate() {
        let fill = if cov.assigned[ci].is_some() { "red" } else { "gray" };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{client_r}\" fill=\"{fill}\"/>\n",
            c.x, c.y
        ));
    }
    for r in routers {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{node_r}\" fill=\"green\" stroke=\"black\" stroke-width=\"{}\"/>\n",
            r.x,
            r.y,
            0.001 * area.width.max(area.height)
        ));
    }
    out.push_str("</g>\n</svg>\n");
    out
}
