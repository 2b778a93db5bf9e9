//! Synthetic stroke glyphs for experiments and tests.
//!
//! A glyph is a set of line segments in a nominal 100 x 100 box. Glyphs can
//! be pushed through an affine map (rotation, shear) and rasterized with a
//! hard-edged pen into a [`BinaryImage`].

use alloc::vec::Vec;

use crate::geometry::Point;
use crate::image::BinaryImage;

/// 2D affine map `p -> M p + t`, `M = [[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    /// Rotation by `degrees` about `center` (clockwise on screen, since `y`
    /// points down).
    pub fn rotation(degrees: f64, center: Point) -> Affine {
        let (s, c) = libm::sincos(degrees.to_radians());
        let m = Affine {
            a: c,
            b: -s,
            c: s,
            d: c,
            tx: 0.0,
            ty: 0.0,
        };
        Affine::about(m, center)
    }

    /// Horizontal shear `x += k * y` about `center`.
    pub fn shear_x(k: f64, center: Point) -> Affine {
        Affine::about(
            Affine {
                b: k,
                ..Affine::IDENTITY
            },
            center,
        )
    }

    fn about(m: Affine, center: Point) -> Affine {
        let moved = m.apply(center);
        Affine {
            tx: center.x - moved.x,
            ty: center.y - moved.y,
            ..m
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x + self.b * p.y + self.tx,
            self.c * p.x + self.d * p.y + self.ty,
        )
    }

    /// `self` after `first`.
    pub fn then_after(&self, first: &Affine) -> Affine {
        Affine {
            a: self.a * first.a + self.b * first.c,
            b: self.a * first.b + self.b * first.d,
            c: self.c * first.a + self.d * first.c,
            d: self.c * first.b + self.d * first.d,
            tx: self.a * first.tx + self.b * first.ty + self.tx,
            ty: self.c * first.tx + self.d * first.ty + self.ty,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Glyph {
    strokes: Vec<(Point, Point)>,
}

fn seg(x0: f64, y0: f64, x1: f64, y1: f64) -> (Point, Point) {
    (Point::new(x0, y0), Point::new(x1, y1))
}

/// Point at height `y` on the segment `a`–`b`.
fn at_y(a: Point, b: Point, y: f64) -> Point {
    let t = (y - a.y) / (b.y - a.y);
    a + (b - a) * t
}

impl Glyph {
    pub fn new(strokes: Vec<(Point, Point)>) -> Self {
        Glyph { strokes }
    }

    pub fn strokes(&self) -> &[(Point, Point)] {
        &self.strokes
    }

    /// Block capital "A": two legs meeting at a 69 degree apex plus a
    /// crossbar, about 132 x 96 between stroke centerlines. Apex angles under
    /// 60 degrees lose one side of the apex triangle to rewiring, so the
    /// glyph is wider than it is tall.
    pub fn letter_a() -> Self {
        let apex = Point::new(66.0, 6.0);
        let left = Point::new(0.0, 102.0);
        let right = Point::new(132.0, 102.0);
        let bar_l = at_y(apex, left, 66.0);
        let bar_r = at_y(apex, right, 66.0);
        Glyph::new(alloc::vec![(apex, left), (apex, right), (bar_l, bar_r)])
    }

    /// Capital "T".
    pub fn letter_t() -> Self {
        Glyph::new(alloc::vec![seg(10.0, 8.0, 90.0, 8.0), seg(50.0, 8.0, 50.0, 95.0)])
    }

    /// Capital "L".
    pub fn letter_l() -> Self {
        Glyph::new(alloc::vec![seg(20.0, 5.0, 20.0, 92.0), seg(20.0, 92.0, 85.0, 92.0)])
    }

    /// Capital "H".
    pub fn letter_h() -> Self {
        Glyph::new(alloc::vec![
            seg(15.0, 5.0, 15.0, 95.0),
            seg(85.0, 5.0, 85.0, 95.0),
            seg(15.0, 50.0, 85.0, 50.0),
        ])
    }

    pub fn transform(&self, map: &Affine) -> Glyph {
        Glyph::new(
            self.strokes
                .iter()
                .map(|&(a, b)| (map.apply(a), map.apply(b)))
                .collect(),
        )
    }

    /// Rasterizes with a round pen of diameter `stroke_width`: a pixel is
    /// foreground when its center lies within `stroke_width / 2` of a stroke.
    /// The canvas is fitted to the glyph with `margin` blank pixels around it.
    pub fn rasterize(&self, stroke_width: f64, margin: u32) -> BinaryImage {
        let half = stroke_width / 2.0;
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(a, b) in &self.strokes {
            for p in [a, b] {
                x0 = x0.min(p.x);
                y0 = y0.min(p.y);
                x1 = x1.max(p.x);
                y1 = y1.max(p.y);
            }
        }
        if self.strokes.is_empty() {
            return BinaryImage::new(1 + 2 * margin, 1 + 2 * margin, []).expect("non-zero size");
        }
        let origin = Point::new(
            libm::floor(x0 - half) - margin as f64,
            libm::floor(y0 - half) - margin as f64,
        );
        let width = (libm::ceil(x1 + half) - origin.x) as u32 + margin + 1;
        let height = (libm::ceil(y1 + half) - origin.y) as u32 + margin + 1;
        let mut fg = Vec::new();
        for y in 0..height {
            for x in 0..width {
                let p = Point::new(x as f64 + origin.x, y as f64 + origin.y);
                if self.strokes.iter().any(|&(a, b)| p.dist_to_segment(a, b) <= half) {
                    fg.push((x, y));
                }
            }
        }
        BinaryImage::new(width, height, fg).expect("pixels generated inside the canvas")
    }
}
