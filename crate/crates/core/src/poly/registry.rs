use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// What a ring variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarKind {
    /// `c_index^{(block)}`, the `index`-th Chern class of the `block`-th
    /// tautological subquotient bundle.
    Chern { block: usize, index: usize },
    /// `q_index`, attached between blocks `index - 1` and `index`.
    Quantum { index: usize },
    /// `c_index`, the universal Chern class of a principal `U_n` bundle.
    Equivariant { index: usize },
    /// `t_index`, a weight of the maximal torus of `U_n`.
    Torus { index: usize },
}

/// Blocks of the monomial order. `Chern` is compared first and dominates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderBlock {
    Chern,
    Quantum,
    Parameter,
}

impl OrderBlock {
    pub const ALL: [OrderBlock; 3] = [OrderBlock::Chern, OrderBlock::Quantum, OrderBlock::Parameter];
}

impl VarKind {
    pub fn order_block(&self) -> OrderBlock {
        match self {
            VarKind::Chern { .. } => OrderBlock::Chern,
            VarKind::Quantum { .. } => OrderBlock::Quantum,
            VarKind::Equivariant { .. } | VarKind::Torus { .. } => OrderBlock::Parameter,
        }
    }

    /// Name used by the text syntax, without the factor suffix.
    pub fn base_name(&self) -> String {
        match *self {
            VarKind::Chern { block, index } => format!("c[{block}][{index}]"),
            VarKind::Quantum { index } => format!("q[{index}]"),
            VarKind::Equivariant { index } => format!("C[{index}]"),
            VarKind::Torus { index } => format!("t[{index}]"),
        }
    }

    fn latex_base(&self) -> String {
        match *self {
            VarKind::Chern { block, index } => format!("c^{{({block})}}_{{{index}}}"),
            VarKind::Quantum { index } => format!("q_{{{index}}}"),
            VarKind::Equivariant { index } => format!("c_{{{index}}}"),
            VarKind::Torus { index } => format!("t_{{{index}}}"),
        }
    }
}

/// A ring variable. `factor` distinguishes copies in a tensor product of
/// rings; factor `f` appends `f` primes to the name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    #[serde(flatten)]
    pub kind: VarKind,
    pub weight: u32,
    #[serde(default)]
    pub factor: usize,
}

impl Var {
    pub fn new(kind: VarKind, weight: u32) -> Self {
        Self::with_factor(kind, weight, 0)
    }

    pub fn with_factor(kind: VarKind, weight: u32, factor: usize) -> Self {
        let name = format!("{}{}", kind.base_name(), "'".repeat(factor));
        Var { name, kind, weight, factor }
    }

    pub fn latex(&self) -> String {
        format!("{}{}", self.kind.latex_base(), "'".repeat(self.factor))
    }
}

/// Ordered, weighted variable table shared by every polynomial of a ring.
#[derive(Clone, Debug, Serialize)]
pub struct VarRegistry {
    vars: Vec<Var>,
    #[serde(skip)]
    blocks: [Range<usize>; 3],
    #[serde(skip)]
    by_name: HashMap<String, usize>,
}

impl PartialEq for VarRegistry {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VarRegistry {}

impl VarRegistry {
    pub fn new(vars: Vec<Var>) -> Result<Self, PolyError> {
        let mut by_name = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(PolyError::Registry(format!("variable {} has weight 0", v.name)));
            }
            if by_name.insert(v.name.clone(), i).is_some() {
                return Err(PolyError::Registry(format!("duplicate variable name {}", v.name)));
            }
        }
        if vars.windows(2).any(|w| w[0].kind.order_block() > w[1].kind.order_block()) {
            return Err(PolyError::Registry(
                "variables must be listed chern block first, then quantum, then parameters".into(),
            ));
        }
        let mut blocks: [Range<usize>; 3] = [0..0, 0..0, 0..0];
        for (slot, block) in OrderBlock::ALL.iter().enumerate() {
            let start = vars.iter().position(|v| v.kind.order_block() == *block);
            blocks[slot] = match start {
                Some(s) => {
                    let len = vars[s..].iter().take_while(|v| v.kind.order_block() == *block).count();
                    s..s + len
                }
                None => {
                    let at = vars.iter().take_while(|v| v.kind.order_block() < *block).count();
                    at..at
                }
            };
        }
        Ok(VarRegistry { vars, blocks, by_name })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn index_of_kind(&self, kind: VarKind, factor: usize) -> Option<usize> {
        self.vars.iter().position(|v| v.kind == kind && v.factor == factor)
    }

    pub fn block(&self, block: OrderBlock) -> Range<usize> {
        self.blocks[block as usize].clone()
    }

    pub fn chern_range(&self) -> Range<usize> {
        self.block(OrderBlock::Chern)
    }

    /// Indices of every non-Chern variable (quantum and parameter blocks).
    pub fn coefficient_range(&self) -> Range<usize> {
        self.blocks[1].start..self.vars.len()
    }

    pub fn is_chern(&self, i: usize) -> bool {
        self.chern_range().contains(&i)
    }

    pub fn quantum_indices(&self) -> Vec<usize> {
        self.block(OrderBlock::Quantum).collect()
    }
}

impl fmt::Display for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.vars.iter().map(|v| format!("{}:{}", v.name, v.weight)).collect();
        write!(f, "[{}]", names.join(", "))
    }
}
