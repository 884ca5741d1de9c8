# catbench/routers/compute.py

from fastapi import APIRouter, Depends, HTTPException
from sqlalchemy.orm import Session
from typing import Dict
import logging

from ..catalog import catalog
from ..commands import Request, describe, run
from ..database import get_db
from ..errors import CatbenchError
from ..profunctors import monoidal_catalog
from ..schemas import ComputeRequest, ComputeResponse
from ..serialization import Parsed, parse
from .. import models
from . import http_error

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/compute", tags=["compute"])


def _resolve(role: str, name: str, db: Session) -> Parsed:
    """A stored document by name, falling back to the built-in catalog."""
    db_document = db.query(models.Document).filter(models.Document.name == name).first()
    if db_document:
        return parse(db_document.body)
    if role == "monoidal" and name in monoidal_catalog():
        return monoidal_catalog()[name]
    builtin = catalog()
    if name in builtin:
        return builtin[name]
    logger.warning(f"Document {name} not found for role {role}")
    raise HTTPException(status_code=404, detail=f"Document {name} not found")


@router.get("", response_model=Dict[str, str])
@router.get("/", response_model=Dict[str, str])
def list_commands():
    return dict(describe())


@router.post("/{command}", response_model=ComputeResponse)
def compute(command: str, body: ComputeRequest, db: Session = Depends(get_db)):
    logger.info(f"Compute {command} with {body.documents}")
    try:
        inputs = {role: _resolve(role, name, db) for role, name in body.documents.items()}
        report = run(command, Request(inputs, dict(body.options), body.cap))
    except CatbenchError as e:
        logger.error(f"Compute {command} failed: {e.render()}")
        raise http_error(e)
    exit_code = 1 if body.expect_some and not report.found else 0
    return ComputeResponse(
        command=command, exit_code=exit_code, found=report.found, text=report.text, data=report.data
    )
