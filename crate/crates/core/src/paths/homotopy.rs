use crate::geom::{distance, Point, Surface, ENDPOINT_TOL};

/// Endpoints plus homotopy class: trivial on the simply connected surfaces,
/// a winding pair on the torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomotopyTriple {
    surface: Surface,
    start: Point,
    end: Point,
    class: [i64; 2],
}

impl HomotopyTriple {
    pub fn new(surface: Surface, start: Point, end: Point, class: [i64; 2]) -> Self {
        let class = if surface.periods().is_some() { class } else { [0, 0] };
        HomotopyTriple {
            surface,
            start,
            end,
            class,
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.end
    }

    pub fn class(&self) -> [i64; 2] {
        self.class
    }
}

/// Product of homotopy triples; `None` is the zero.
pub fn homotopy_concat(t1: &HomotopyTriple, t2: &HomotopyTriple) -> Option<HomotopyTriple> {
    if t1.surface != t2.surface {
        return None;
    }
    if distance(&t1.surface, &t1.end, &t2.start).ok()? > ENDPOINT_TOL {
        return None;
    }
    let mut class = [t1.class[0] + t2.class[0], t1.class[1] + t2.class[1]];
    // Matching endpoints may sit on opposite sides of a seam.
    if let (Some((lx, ly)), Some((ex, ey)), Some((sx, sy))) =
        (t1.surface.periods(), t1.end.planar(), t2.start.planar())
    {
        class[0] += ((ex - sx) / lx).round() as i64;
        class[1] += ((ey - sy) / ly).round() as i64;
    }
    Some(HomotopyTriple::new(t1.surface, t1.start, t2.end, class))
}
