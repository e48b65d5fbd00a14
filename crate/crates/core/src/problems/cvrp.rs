use rand::{seq::SliceRandom, RngCore};

use super::Problem;
use crate::ga::{is_permutation, Genome, OperatorConfig};
use crate::{Error, Result};

type Point = (f64, f64);

/// Single-depot capacitated VRP on the euclidean plane.
///
/// Customers are numbered `1..=n`; a genome is a visiting order that the
/// greedy capacity split turns into routes.
#[derive(Debug, Clone, PartialEq)]
pub struct CvrpInstance {
    pub name: String,
    depot: Point,
    customers: Vec<Point>,
    demands: Vec<f64>,
    capacity: f64,
    pub best_known_cost: Option<f64>,
}

fn dist(a: Point, b: Point) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

impl CvrpInstance {
    pub fn new(depot: Point, customers: Vec<Point>, demands: Vec<f64>, capacity: f64) -> Result<Self> {
        if customers.is_empty() {
            return Err(Error::InvalidParameter("CVRP needs at least one customer".into()));
        }
        if customers.len() != demands.len() {
            return Err(Error::LengthMismatch {
                left: customers.len(),
                right: demands.len(),
            });
        }
        if !(capacity.is_finite() && capacity > 0.0) {
            return Err(Error::InvalidParameter(format!("capacity {capacity} must be positive")));
        }
        let finite = |p: &Point| p.0.is_finite() && p.1.is_finite();
        if !finite(&depot) || !customers.iter().all(finite) {
            return Err(Error::InvalidParameter("coordinates must be finite".into()));
        }
        for (i, &d) in demands.iter().enumerate() {
            if !(d > 0.0 && d <= capacity) {
                return Err(Error::InvalidParameter(format!(
                    "customer {} demand {d} outside (0, {capacity}]",
                    i + 1
                )));
            }
        }
        Ok(Self {
            name: String::new(),
            depot,
            customers,
            demands,
            capacity,
            best_known_cost: None,
        })
    }

    pub fn customer_count(&self) -> usize {
        self.customers.len()
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn depot(&self) -> Point {
        self.depot
    }

    pub fn customer(&self, id: u32) -> Point {
        self.customers[id as usize - 1]
    }

    pub fn demand(&self, id: u32) -> f64 {
        self.demands[id as usize - 1]
    }

    fn check_perm(&self, perm: &[u32]) -> Result<()> {
        if perm.len() != self.customers.len() || !is_permutation(perm) {
            return Err(Error::NotPermutation(format!(
                "expected a permutation of 1..={}",
                self.customers.len()
            )));
        }
        Ok(())
    }

    /// Greedy split: walk the order and open a new route whenever the next
    /// customer would exceed the remaining capacity.
    pub fn decode(&self, perm: &[u32]) -> Result<Vec<Vec<u32>>> {
        self.check_perm(perm)?;
        let mut routes = Vec::new();
        let mut route = Vec::new();
        let mut load = 0.0;
        for &c in perm {
            let d = self.demand(c);
            if !route.is_empty() && load + d > self.capacity {
                routes.push(std::mem::take(&mut route));
                load = 0.0;
            }
            route.push(c);
            load += d;
        }
        if !route.is_empty() {
            routes.push(route);
        }
        Ok(routes)
    }

    /// Closed tour length depot -> route -> depot.
    pub fn route_cost(&self, route: &[u32]) -> f64 {
        let mut prev = self.depot;
        let mut cost = 0.0;
        for &c in route {
            let p = self.customer(c);
            cost += dist(prev, p);
            prev = p;
        }
        cost + dist(prev, self.depot)
    }

    /// Total length of the greedy-split routes for `perm`.
    pub fn fitness(&self, perm: &[u32]) -> Result<f64> {
        self.check_perm(perm)?;
        Ok(self.cost_unchecked(perm))
    }

    // Same walk as `decode`, without materializing routes.
    fn cost_unchecked(&self, perm: &[u32]) -> f64 {
        let mut prev = self.depot;
        let mut load = 0.0;
        let mut cost = 0.0;
        for &c in perm {
            let d = self.demand(c);
            let p = self.customer(c);
            if load > 0.0 && load + d > self.capacity {
                cost += dist(prev, self.depot);
                prev = self.depot;
                load = 0.0;
            }
            cost += dist(prev, p);
            prev = p;
            load += d;
        }
        cost + dist(prev, self.depot)
    }

    /// Parses the TSPLIB-style CVRP subset: `NAME`, `TYPE : CVRP`,
    /// `DIMENSION`, `CAPACITY` (plus `COMMENT` and `EDGE_WEIGHT_TYPE : EUC_2D`),
    /// then `NODE_COORD_SECTION`, `DEMAND_SECTION`, `DEPOT_SECTION` and `EOF`.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }

    /// Writes the instance in the format accepted by [`CvrpInstance::parse`],
    /// with the depot as node 1.
    pub fn to_tsplib(&self) -> String {
        let mut out = String::new();
        let name = if self.name.is_empty() { "unnamed" } else { &self.name };
        out.push_str(&format!("NAME : {name}\nTYPE : CVRP\n"));
        out.push_str(&format!("DIMENSION : {}\n", self.customers.len() + 1));
        out.push_str(&format!("CAPACITY : {}\n", self.capacity));
        out.push_str("NODE_COORD_SECTION\n");
        out.push_str(&format!("1 {} {}\n", self.depot.0, self.depot.1));
        for (i, (x, y)) in self.customers.iter().enumerate() {
            out.push_str(&format!("{} {x} {y}\n", i + 2));
        }
        out.push_str("DEMAND_SECTION\n1 0\n");
        for (i, d) in self.demands.iter().enumerate() {
            out.push_str(&format!("{} {d}\n", i + 2));
        }
        out.push_str("DEPOT_SECTION\n1\n-1\nEOF\n");
        out
    }
}

impl Problem for CvrpInstance {
    fn evaluate(&self, genome: &Genome) -> f64 {
        let perm = genome.as_perm().expect("CVRP evaluates permutations");
        debug_assert!(is_permutation(perm) && perm.len() == self.customers.len());
        self.cost_unchecked(perm)
    }

    fn random_genome(&self, rng: &mut dyn RngCore) -> Genome {
        let mut perm: Vec<u32> = (1..=self.customers.len() as u32).collect();
        perm.shuffle(rng);
        Genome::Perm(perm)
    }

    fn default_operators(&self) -> OperatorConfig {
        OperatorConfig::permutation()
    }
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    dimension: Option<usize>,
    capacity: Option<f64>,
    coords: Vec<Option<Point>>,
    demands: Vec<Option<f64>>,
    depot: Option<usize>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Header,
    Coords,
    Demands,
    Depot,
    Done,
}

impl Section {
    fn label(self) -> &'static str {
        match self {
            Section::Header => "header",
            Section::Coords => "NODE_COORD_SECTION",
            Section::Demands => "DEMAND_SECTION",
            Section::Depot => "DEPOT_SECTION",
            Section::Done => "EOF",
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse::<T>()
        .map_err(|_| Error::parse(line, format!("{what} '{field}' is not numeric")))
}

impl Parser {
    fn dimension(&self, line: usize) -> Result<usize> {
        self.dimension
            .ok_or_else(|| Error::parse(line, "section before DIMENSION"))
    }

    fn node_index(&self, line: usize, field: &str) -> Result<usize> {
        let dim = self.dimension(line)?;
        let idx: usize = number(line, field, "node index")?;
        if idx < 1 || idx > dim {
            return Err(Error::parse(line, format!("node index {idx} outside 1..={dim}")));
        }
        Ok(idx - 1)
    }

    fn run(mut self, text: &str) -> Result<CvrpInstance> {
        let mut section = Section::Header;
        let mut seen = Vec::new();
        let mut last_line = 0;
        let mut coords_read = 0;
        let mut demands_read = 0;
        let mut depot_closed = false;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if section == Section::Done {
                return Err(Error::parse(line_no, "content after EOF"));
            }

            let keyword = line.split(|c: char| c.is_whitespace() || c == ':').next().unwrap_or("");
            let next_section = match keyword {
                "NODE_COORD_SECTION" => Some(Section::Coords),
                "DEMAND_SECTION" => Some(Section::Demands),
                "DEPOT_SECTION" => Some(Section::Depot),
                "EOF" => Some(Section::Done),
                _ => None,
            };
            if let Some(next) = next_section {
                self.close_section(section, line_no, coords_read, demands_read, depot_closed)?;
                if next != Section::Done {
                    if seen.contains(&next) {
                        return Err(Error::parse(line_no, format!("duplicate {}", next.label())));
                    }
                    seen.push(next);
                    let dim = self.dimension(line_no)?;
                    if self.coords.is_empty() {
                        self.coords = vec![None; dim];
                        self.demands = vec![None; dim];
                    }
                }
                section = next;
                continue;
            }

            match section {
                Section::Header => self.header_line(line_no, line)?,
                Section::Coords => {
                    let f: Vec<&str> = line.split_whitespace().collect();
                    if f.len() != 3 {
                        return Err(Error::parse(line_no, "coordinate line must be 'index x y'"));
                    }
                    let idx = self.node_index(line_no, f[0])?;
                    let x: f64 = number(line_no, f[1], "x coordinate")?;
                    let y: f64 = number(line_no, f[2], "y coordinate")?;
                    if !(x.is_finite() && y.is_finite()) {
                        return Err(Error::parse(line_no, "coordinates must be finite"));
                    }
                    if self.coords[idx].replace((x, y)).is_some() {
                        return Err(Error::parse(line_no, format!("node {} listed twice", idx + 1)));
                    }
                    coords_read += 1;
                }
                Section::Demands => {
                    let f: Vec<&str> = line.split_whitespace().collect();
                    if f.len() != 2 {
                        return Err(Error::parse(line_no, "demand line must be 'index demand'"));
                    }
                    let idx = self.node_index(line_no, f[0])?;
                    let d: f64 = number(line_no, f[1], "demand")?;
                    let cap = self
                        .capacity
                        .ok_or_else(|| Error::parse(line_no, "DEMAND_SECTION before CAPACITY"))?;
                    if d > cap {
                        return Err(Error::parse(
                            line_no,
                            format!("demand {d} exceeds capacity {cap}"),
                        ));
                    }
                    if d < 0.0 {
                        return Err(Error::parse(line_no, format!("negative demand {d}")));
                    }
                    if self.demands[idx].replace(d).is_some() {
                        return Err(Error::parse(line_no, format!("demand for node {} listed twice", idx + 1)));
                    }
                    demands_read += 1;
                }
                Section::Depot => {
                    let value: i64 = number(line_no, line, "depot index")?;
                    if value == -1 {
                        depot_closed = true;
                    } else if depot_closed {
                        return Err(Error::parse(line_no, "depot entry after -1"));
                    } else if self.depot.is_some() {
                        return Err(Error::parse(line_no, "only a single depot is supported"));
                    } else {
                        self.depot = Some(self.node_index(line_no, line)?);
                    }
                }
                Section::Done => unreachable!(),
            }
        }

        let end = last_line + 1;
        self.close_section(section, end, coords_read, demands_read, depot_closed)?;
        for needed in [Section::Coords, Section::Demands, Section::Depot] {
            if !seen.contains(&needed) {
                return Err(Error::parse(end, format!("missing {}", needed.label())));
            }
        }
        self.finish(end)
    }

    fn header_line(&mut self, line_no: usize, line: &str) -> Result<()> {
        let (key, value) = line
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line_no, format!("expected 'KEY : VALUE', got '{line}'")))?;
        match key {
            "NAME" => self.name = Some(value.to_string()),
            "COMMENT" => {}
            "TYPE" => {
                if value != "CVRP" {
                    return Err(Error::parse(line_no, format!("TYPE must be CVRP, got '{value}'")));
                }
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(Error::parse(line_no, format!("unsupported EDGE_WEIGHT_TYPE '{value}'")));
                }
            }
            "DIMENSION" => {
                let dim: usize = number(line_no, value, "DIMENSION")?;
                if dim < 2 {
                    return Err(Error::parse(line_no, "DIMENSION must count the depot and at least one customer"));
                }
                self.dimension = Some(dim);
            }
            "CAPACITY" => {
                let cap: f64 = number(line_no, value, "CAPACITY")?;
                if !(cap.is_finite() && cap > 0.0) {
                    return Err(Error::parse(line_no, "CAPACITY must be positive"));
                }
                self.capacity = Some(cap);
            }
            other => return Err(Error::parse(line_no, format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    fn close_section(
        &self,
        section: Section,
        line_no: usize,
        coords_read: usize,
        demands_read: usize,
        depot_closed: bool,
    ) -> Result<()> {
        let dim = self.dimension.unwrap_or(0);
        match section {
            Section::Coords if coords_read != dim => Err(Error::parse(
                line_no,
                format!("NODE_COORD_SECTION has {coords_read} of {dim} entries"),
            )),
            Section::Demands if demands_read != dim => Err(Error::parse(
                line_no,
                format!("DEMAND_SECTION has {demands_read} of {dim} entries"),
            )),
            Section::Depot if self.depot.is_none() || !depot_closed => Err(Error::parse(
                line_no,
                "DEPOT_SECTION must list the depot index followed by -1",
            )),
            _ => Ok(()),
        }
    }

    fn finish(self, end: usize) -> Result<CvrpInstance> {
        let capacity = self.capacity.ok_or_else(|| Error::parse(end, "missing CAPACITY"))?;
        let depot_idx = self.depot.expect("checked by close_section");
        if self.demands[depot_idx] != Some(0.0) {
            return Err(Error::parse(end, "depot demand must be 0"));
        }
        let depot = self.coords[depot_idx].expect("all coordinates present");
        let mut customers = Vec::new();
        let mut demands = Vec::new();
        for (i, (c, d)) in self.coords.iter().zip(&self.demands).enumerate() {
            if i == depot_idx {
                continue;
            }
            customers.push(c.expect("all coordinates present"));
            demands.push(d.expect("all demands present"));
        }
        let mut inst = CvrpInstance::new(depot, customers, demands, capacity)
            .map_err(|e| Error::parse(end, e.to_string()))?;
        inst.name = self.name.unwrap_or_default();
        Ok(inst)
    }
}
