# catbench/routers/documents.py

from fastapi import APIRouter, Depends, File, Form, HTTPException, UploadFile
from sqlalchemy.orm import Session
from typing import List, Optional
from pathlib import PurePath
import logging

from ..database import get_db
from .. import models
from ..errors import CatbenchError
from ..schemas import DocumentCreate, DocumentRead, DocumentSummary
from ..serialization import Parsed, kind_of, load_document, parse, serialize
from . import http_error

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/documents", tags=["documents"])


def _store(name: str, value: Parsed, db: Session) -> models.Document:
    existing = db.query(models.Document).filter(models.Document.name == name).first()
    if existing:
        logger.warning(f"Document {name} already exists")
        raise HTTPException(status_code=400, detail="Document already exists")
    db_document = models.Document(name=name, kind=kind_of(value), body=serialize(value))
    db.add(db_document)
    db.commit()
    db.refresh(db_document)
    logger.info(f"Document stored: {db_document.id} ({name}, {db_document.kind.value})")
    return db_document


def get_document(name: str, db: Session) -> models.Document:
    db_document = db.query(models.Document).filter(models.Document.name == name).first()
    if not db_document:
        logger.warning(f"Document {name} not found")
        raise HTTPException(status_code=404, detail="Document not found")
    return db_document


@router.post("", response_model=DocumentRead)
@router.post("/", response_model=DocumentRead)
def create_document(document: DocumentCreate, db: Session = Depends(get_db)):
    logger.info(f"Creating document {document.name}")
    try:
        value = load_document(document.document)
    except CatbenchError as e:
        logger.warning(f"Rejected document {document.name}: {e.render()}")
        raise http_error(e)
    return _store(document.name, value, db)


@router.post("/upload", response_model=DocumentRead)
async def upload_document(
    file: UploadFile = File(...),
    name: Optional[str] = Form(None),
    db: Session = Depends(get_db),
):
    name = name or PurePath(file.filename or "document").stem
    logger.info(f"Uploading document {name} from {file.filename}")
    content = await file.read()
    try:
        value = parse(content.decode("utf-8"))
    except UnicodeDecodeError:
        raise HTTPException(status_code=422, detail="Documents must be UTF-8 text")
    except CatbenchError as e:
        logger.warning(f"Rejected upload {name}: {e.render()}")
        raise http_error(e)
    return _store(name, value, db)


@router.get("", response_model=List[DocumentSummary])
@router.get("/", response_model=List[DocumentSummary])
def list_documents(db: Session = Depends(get_db)):
    documents = db.query(models.Document).order_by(models.Document.name).all()
    logger.info(f"Found {len(documents)} documents")
    return documents


@router.get("/{name}", response_model=DocumentRead)
def read_document(name: str, db: Session = Depends(get_db)):
    return get_document(name, db)


@router.delete("/{name}")
def delete_document(name: str, db: Session = Depends(get_db)):
    db_document = get_document(name, db)
    db.delete(db_document)
    db.commit()
    logger.info(f"Document {name} deleted successfully")
    return {"detail": "Document deleted successfully"}
