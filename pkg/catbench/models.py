# catbench/models.py

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy import Enum as SAEnum
from sqlalchemy.sql import func

from .database import Base
from .schemas import DocumentKind


class Document(Base):
    """A workspace document, stored in its canonical serialization."""

    __tablename__ = "documents"

    id = Column(Integer, primary_key=True, index=True)
    name = Column(String, unique=True, index=True, nullable=False)
    kind = Column(SAEnum(DocumentKind), nullable=False)
    body = Column(Text, nullable=False)
    created_at = Column(DateTime, default=func.current_timestamp())
