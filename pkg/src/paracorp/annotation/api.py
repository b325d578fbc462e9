"""HTTP/JSON API over the annotation service.

Errors always carry a structured body: {"code": ..., "message": ...}.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .guideline import GUIDELINE, guideline_markdown
from .service import AnnotationService, ServiceError, degree_to_label


class LabelSubmission(BaseModel):
    pair_id: str
    annotator_id: str
    sts_degree: int = Field(ge=0, le=5)
    near_paraphrase: bool = False
    supersede: bool = False


class AdjudicationSubmission(BaseModel):
    pair_id: str
    adjudicator_id: str
    final_label: str
    near_paraphrase: bool = False


def create_app(service: AnnotationService) -> FastAPI:
    app = FastAPI(title="paracorp annotation service", docs_url=None, redoc_url=None)
    # The labeling UI is served separately (static files); allow it in.
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.http_status, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422, content={"code": "invalid_request", "message": str(exc.errors())})

    @app.get("/api/tasks/next")
    def next_task(annotator: str):
        task = service.next_task(annotator)
        if task is None:
            return {"task": None}
        pair = service.pairs[task.pair_id]
        return {
            "task": {
                "task_id": task.task_id,
                "pair_id": task.pair_id,
                "annotator_id": task.annotator_id,
                "sentence_1": pair.sentence_1,
                "sentence_2": pair.sentence_2,
                "assigned_at": task.assigned_at,
            }
        }

    @app.post("/api/labels")
    def submit_label(body: LabelSubmission):
        record = service.submit(
            annotator_id=body.annotator_id,
            pair_id=body.pair_id,
            sts_degree=body.sts_degree,
            near_paraphrase=body.near_paraphrase,
            supersede=body.supersede,
        )
        return {"record": asdict(record)}

    @app.get("/api/disagreements")
    def disagreements():
        out = []
        for pair_id in service.disagreements():
            pair = service.pairs[pair_id]
            judgments = [
                {
                    "annotator_id": annotator,
                    "sts_degree": record.sts_degree,
                    "label": degree_to_label(record.sts_degree),
                    "near_paraphrase": record.near_paraphrase,
                }
                for annotator, record in service.latest_records(pair_id).items()
            ]
            out.append(
                {
                    "pair_id": pair_id,
                    "sentence_1": pair.sentence_1,
                    "sentence_2": pair.sentence_2,
                    "judgments": judgments,
                }
            )
        return {"disagreements": out}

    @app.post("/api/adjudications")
    def adjudicate(body: AdjudicationSubmission):
        adj = service.adjudicate(
            adjudicator_id=body.adjudicator_id,
            pair_id=body.pair_id,
            final_label=body.final_label,
            near_paraphrase=body.near_paraphrase,
        )
        return {"adjudication": asdict(adj)}

    @app.get("/api/stats/agreement")
    def agreement():
        return {"reports": [asdict(r) for r in service.agreement_report()]}

    @app.get("/api/guideline")
    def guideline():
        return {**GUIDELINE, "markdown": guideline_markdown()}

    @app.get("/api/export")
    def export():
        return {"pairs": [asdict(p) for p in service.export_adjudicated()]}

    return app
