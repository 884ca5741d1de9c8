# catbench/schemas.py

from pydantic import BaseModel, Field
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union
import datetime
from enum import Enum

from .fincat import Variance


# Enums
class DocumentKind(str, Enum):
    CATEGORY = "category"
    FUNCTOR = "functor"
    SETFUNCTOR = "setfunctor"
    PROFUNCTOR = "profunctor"
    MONOIDAL = "monoidal"
    WEIGHTED_DIAGRAM = "weighted-diagram"


# Workspace documents
class CategoryDocument(BaseModel):
    kind: Literal["category"] = "category"
    name: str = ""
    objects: List[str]
    morphisms: List[Tuple[str, str, str]] = Field(..., description="[name, dom, cod] triples")
    identities: Dict[str, str]
    composition: List[Tuple[str, str, str]] = Field(
        default_factory=list, description="[g, f, g∘f] triples"
    )

    model_config = {"extra": "forbid"}


class FunctorDocument(BaseModel):
    kind: Literal["functor"] = "functor"
    name: str = ""
    source: CategoryDocument
    target: CategoryDocument
    objects: Dict[str, str]
    morphisms: Dict[str, str]

    model_config = {"extra": "forbid"}


class SetFunctorDocument(BaseModel):
    kind: Literal["setfunctor"] = "setfunctor"
    name: str = ""
    variance: Variance = Variance.COVARIANT
    category: CategoryDocument
    sets: Dict[str, List[Any]]
    actions: Dict[str, Dict[str, Any]] = Field(
        ..., description="per morphism, rendered element -> image element"
    )

    model_config = {"extra": "forbid"}


class ProfunctorDocument(BaseModel):
    kind: Literal["profunctor"] = "profunctor"
    name: str = ""
    source: CategoryDocument
    target: CategoryDocument
    sets: List[Tuple[str, str, List[Any]]] = Field(..., description="[target object, source object, elements]")
    left: List[Tuple[str, str, Dict[str, Any]]] = Field(..., description="[target morphism, source object, map]")
    right: List[Tuple[str, str, Dict[str, Any]]] = Field(..., description="[source morphism, target object, map]")

    model_config = {"extra": "forbid"}


class MonoidalDocument(BaseModel):
    kind: Literal["monoidal"] = "monoidal"
    name: str = ""
    category: CategoryDocument
    unit: str
    tensor_objects: List[Tuple[str, str, str]]
    tensor_morphisms: List[Tuple[str, str, str]]

    model_config = {"extra": "forbid"}


class WeightedDiagramDocument(BaseModel):
    kind: Literal["weighted-diagram"] = "weighted-diagram"
    name: str = ""
    diagram: Annotated[Union[FunctorDocument, SetFunctorDocument], Field(discriminator="kind")]
    weight: SetFunctorDocument

    model_config = {"extra": "forbid"}


Document = Annotated[
    Union[
        CategoryDocument,
        FunctorDocument,
        SetFunctorDocument,
        ProfunctorDocument,
        MonoidalDocument,
        WeightedDiagramDocument,
    ],
    Field(discriminator="kind"),
]


# Document store schemas
class DocumentCreate(BaseModel):
    name: str = Field(..., min_length=1, max_length=200, example="arr")
    document: Dict[str, Any] = Field(..., description="A workspace document")


class DocumentRead(BaseModel):
    id: int
    name: str
    kind: DocumentKind
    body: str
    created_at: Optional[datetime.datetime] = None

    model_config = {"from_attributes": True}


class DocumentSummary(BaseModel):
    id: int
    name: str
    kind: DocumentKind

    model_config = {"from_attributes": True}


# Compute schemas
class ComputeRequest(BaseModel):
    documents: Dict[str, str] = Field(
        default_factory=dict,
        example={"category": "idem"},
        description="Role of each argument -> stored document name",
    )
    options: Dict[str, Any] = Field(default_factory=dict, example={"idempotent": "e"})
    cap: Optional[int] = Field(None, gt=0)
    expect_some: bool = False


class ComputeResponse(BaseModel):
    command: str
    exit_code: int
    found: bool
    text: str
    data: Dict[str, Any] = Field(default_factory=dict)
