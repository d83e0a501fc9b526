//! A built group together with everything derived from it, computed once.

use std::sync::OnceLock;

use crate::descriptor::CoxeterType;
use crate::descent::StructureConstants;
use crate::error::Result;
use crate::group::{ConjugacyClasses, CoxeterGroup, Element, DEFAULT_ELEMENT_BUDGET};
use crate::marks::{build_marks_table_from_spaces, coset_spaces, CosetSpace, MarksTable};
use crate::parabolic::{class_index, parabolic_closure_class, ClassIndex};

/// Conjugacy classes of `W`, each tagged with the parabolic closure class
/// (an index into `E`) of the cyclic group generated by its elements.
#[derive(Clone, Debug)]
pub struct ClosureData {
    pub classes: ConjugacyClasses,
    pub closure: Vec<usize>,
}

impl ClosureData {
    /// Closure class of `⟨w⟩`.
    pub fn closure_of(&self, w: Element) -> usize {
        self.closure[self.classes.class_of(w)]
    }
}

pub struct Workbench {
    group: CoxeterGroup,
    spaces: Vec<CosetSpace>,
    marks: MarksTable,
    closure: OnceLock<Result<ClosureData>>,
    constants: OnceLock<StructureConstants>,
}

impl std::fmt::Debug for Workbench {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workbench").field("group", &self.group).finish()
    }
}

impl Workbench {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        Self::with_budget(ty, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn with_budget(ty: CoxeterType, budget: u64) -> Result<Self> {
        let group = CoxeterGroup::build_with_budget(ty, budget)?;
        Ok(Self::from_group(group))
    }

    pub fn from_group(group: CoxeterGroup) -> Self {
        let classes = class_index(&group);
        let spaces = coset_spaces(&group, &classes);
        let marks = build_marks_table_from_spaces(&group, &classes, &spaces);
        Self {
            group,
            spaces,
            marks,
            closure: OnceLock::new(),
            constants: OnceLock::new(),
        }
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.group.coxeter_type()
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassIndex {
        self.marks.classes()
    }

    pub fn marks(&self) -> &MarksTable {
        &self.marks
    }

    /// `W/W_J` for each `J ∈ E`, in `E` order.
    pub fn coset_spaces(&self) -> &[CosetSpace] {
        &self.spaces
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        self.constants
            .get_or_init(|| StructureConstants::compute(&self.group))
    }

    /// Parabolic closure class of `⟨gens⟩`.
    pub fn closure_class(&self, gens: &[Element]) -> Result<usize> {
        parabolic_closure_class(&self.group, gens, &self.spaces, &self.marks)
    }

    pub fn closure_data(&self) -> Result<&ClosureData> {
        self.closure
            .get_or_init(|| {
                let classes = self.group.conjugacy_classes();
                let closure = classes
                    .representatives()
                    .iter()
                    .map(|&w| self.closure_class(&[w]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ClosureData { classes, closure })
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}
