//! SVG rendering of an interval ordering: one horizontal bar per interval,
//! stacked top-to-bottom in processing order, with the parts already covered
//! on arrival drawn solid and the exposed parts dashed.

use iord_core::instance::Ordering;
use iord_core::{DisjointUnion, Instance, Rat};

pub const WIDTH: u32 = 800;
pub const MARGIN: u32 = 48;
pub const ROW_HEIGHT: u32 = 28;

/// Affine map from rational coordinates to pixel x positions. The mapping is
/// exact in rational arithmetic; only the final pixel value is rounded.
pub struct Scale {
    lo: Rat,
    span: Rat,
}

impl Scale {
    pub fn for_instance(inst: &Instance) -> Option<Scale> {
        let lo = inst.intervals().iter().map(|i| i.start()).min()?.clone();
        let hi = inst.intervals().iter().map(|i| i.end()).max()?.clone();
        let span = hi - &lo;
        Some(Scale { lo, span })
    }

    /// Pixel x position of a coordinate, rounded half-up to 3 decimals.
    pub fn x(&self, c: &Rat) -> String {
        let inner = Rat::from_integer((WIDTH - 2 * MARGIN).into());
        let px = Rat::from_integer(MARGIN.into()) + (c - &self.lo) * inner / &self.span;
        format_px(&px)
    }
}

fn format_px(px: &Rat) -> String {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let scaled = px * Rat::from_integer(BigInt::from(1000));
    let rounded = (scaled + Rat::new(BigInt::from(1), BigInt::from(2))).floor();
    let milli = rounded.to_integer();
    let neg = milli.is_negative();
    let abs = milli.magnitude().to_string();
    let abs = if abs.len() < 4 {
        format!("{:0>4}", abs)
    } else {
        abs
    };
    let (int_part, frac) = abs.split_at(abs.len() - 3);
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Renders the ordering; bars appear top-to-bottom in ordering position,
/// dashed segments are exactly the exposed parts of `cost_of_ordering`.
pub fn render_ordering(inst: &Instance, ordering: &Ordering) -> String {
    let n = inst.len();
    let height = 2 * MARGIN + ROW_HEIGHT * n.max(1) as u32;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" \
         viewBox=\"0 0 {WIDTH} {height}\">\n"
    ));
    out.push_str("  <style>text { font: 12px monospace; fill: #222; }</style>\n");

    if let Some(scale) = Scale::for_instance(inst) {
        let (_, exposed) = inst.cost_of_ordering(ordering);
        for (pos, &idx) in ordering.as_slice().iter().enumerate() {
            let y = MARGIN + ROW_HEIGHT * pos as u32 + ROW_HEIGHT / 2;
            let interval = &inst.intervals()[idx];
            out.push_str(&format!(
                "  <text x=\"4\" y=\"{}\">I{}</text>\n",
                y + 4,
                idx + 1
            ));
            let whole = DisjointUnion::from(interval.clone());
            let covered_on_arrival = whole.subtract(&exposed[pos]);
            for c in covered_on_arrival.components() {
                out.push_str(&format!(
                    "  <line class=\"covered\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" \
                     stroke=\"#444\" stroke-width=\"5\"/>\n",
                    scale.x(c.start()),
                    scale.x(c.end()),
                ));
            }
            for c in exposed[pos].components() {
                out.push_str(&format!(
                    "  <line class=\"exposed\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" \
                     stroke=\"#d62728\" stroke-width=\"5\" stroke-dasharray=\"6 4\"/>\n",
                    scale.x(c.start()),
                    scale.x(c.end()),
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
