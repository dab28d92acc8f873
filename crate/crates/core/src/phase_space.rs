use serde::{Deserialize, Serialize};

/// A point `(x, y, p_x, p_y)` of two-mode phase space (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: f64,
    pub y: f64,
    pub p_x: f64,
    pub p_y: f64,
}

impl PhaseSpacePoint {
    pub const ORIGIN: PhaseSpacePoint = PhaseSpacePoint { x: 0.0, y: 0.0, p_x: 0.0, p_y: 0.0 };

    pub fn new(x: f64, y: f64, p_x: f64, p_y: f64) -> Self {
        Self { x, y, p_x, p_y }
    }

    /// Components in axis order `[x, y, p_x, p_y]`.
    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.p_x, self.p_y]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

impl std::ops::Add for PhaseSpacePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.p_x + o.p_x, self.p_y + o.p_y)
    }
}

impl std::ops::Sub for PhaseSpacePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.p_x - o.p_x, self.p_y - o.p_y)
    }
}

impl std::ops::Neg for PhaseSpacePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.p_x, -self.p_y)
    }
}
