//! SVG map of a plan: hexagons tinted by PL tone, repeater dots, the service
//! circle, and any terrain overlays.

use std::fmt::Write as _;

use vhfnet::{PlTone, Plan, Point};

const MARGIN: f64 = 2.0;

/// Hue from the golden angle so neighboring tone indices look different.
fn tone_color(tone: PlTone) -> String {
    let hue = (f64::from(tone.0) * 137.507_764) % 360.0;
    format!("hsl({hue:.1},65%,72%)")
}

/// Four decimals, never "-0.0000".
fn n(v: f64) -> String {
    let r = (v * 1e4).round() / 1e4 + 0.0;
    format!("{r:.4}")
}

fn pt(p: Point) -> String {
    // SVG y grows downwards.
    format!("{},{}", n(p.x), n(-p.y))
}

pub fn render_svg(plan: &Plan) -> String {
    let t = &plan.tessellation;
    let mut extent = t.service_radius;
    for c in &t.cells {
        extent = extent.max(c.center.norm() + c.r);
    }
    for a in &plan.augmentations {
        extent = extent.max(a.obstacle.center.norm() + a.obstacle.radius);
        for r in &a.added {
            extent = extent.max(r.position.norm() + r.radius);
        }
    }
    extent += MARGIN;
    let dot = t.cell_radius * 0.08;
    let stroke = t.cell_radius * 0.02;

    let (dot, stroke) = (n(dot), n(stroke));

    let mut s = String::new();
    let (lo, span) = (n(-extent), n(2.0 * extent));
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo} {lo} {span} {span}" width="800" height="800">"##
    );
    let _ = writeln!(s, "<title>{} repeaters, {} mode</title>", t.len(), plan.mode);
    let _ = writeln!(s, r##"<g stroke="#333" stroke-width="{stroke}">"##);
    for c in &t.cells {
        let tone = plan.tone_of_repeater(c.repeater_id);
        let points: Vec<String> = c.corners().iter().map(|&p| pt(p)).collect();
        let _ = writeln!(
            s,
            r##"<polygon class="cell" data-id="{}" data-q="{}" data-s="{}" data-pl="{}" fill="{}" points="{}"/>"##,
            c.repeater_id,
            c.coord.q,
            c.coord.s,
            tone.0,
            tone_color(tone),
            points.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<circle class="service" cx="0" cy="0" r="{}" fill="none" stroke="#000" stroke-width="{}" stroke-dasharray="{}"/>"##,
        n(t.service_radius),
        n(t.cell_radius * 0.04),
        n(t.cell_radius * 0.3)
    );
    for c in &t.cells {
        let _ = writeln!(
            s,
            r##"<circle class="repeater" data-id="{}" cx="{}" cy="{}" r="{dot}" fill="#000"/>"##,
            c.repeater_id,
            n(c.center.x),
            n(-c.center.y)
        );
    }
    for a in &plan.augmentations {
        let o = &a.obstacle;
        let _ = writeln!(
            s,
            r##"<circle class="obstacle" cx="{}" cy="{}" r="{}" fill="#8b5a2b" fill-opacity="0.45" stroke="#5a3a1a" stroke-width="{stroke}"/>"##,
            n(o.center.x),
            n(-o.center.y),
            n(o.radius)
        );
        for r in &a.added {
            let _ = writeln!(
                s,
                r##"<circle class="added-coverage" cx="{}" cy="{}" r="{}" fill="none" stroke="#c00" stroke-width="{stroke}"/>"##,
                n(r.position.x),
                n(-r.position.y),
                n(r.radius)
            );
            let _ = writeln!(
                s,
                r##"<circle class="added-repeater" cx="{}" cy="{}" r="{}" fill="#c00"/>"##,
                n(r.position.x),
                n(-r.position.y),
                n(t.cell_radius * 0.12)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
