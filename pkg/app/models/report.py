from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class ReportSection(BaseModel):
    """One block of a report: either a table (columns + rows) or key/value pairs"""

    name: str
    title: str
    columns: List[str] = Field(default_factory=list)
    rows: List[List[Any]] = Field(default_factory=list)
    values: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class ReportDocument(BaseModel):
    """Ordered report sections produced by one command"""

    command: str
    source: Optional[str] = None
    sections: List[ReportSection] = Field(default_factory=list)

    def add_table(self, name: str, title: str, columns, rows, notes=()) -> ReportSection:
        section = ReportSection(
            name=name, title=title, columns=list(columns), rows=[list(r) for r in rows], notes=list(notes)
        )
        self.sections.append(section)
        return section

    def add_values(self, name: str, title: str, values: Dict[str, Any], notes=()) -> ReportSection:
        section = ReportSection(name=name, title=title, values=dict(values), notes=list(notes))
        self.sections.append(section)
        return section

    def section(self, name: str) -> ReportSection:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def column(self, section: str, column: str) -> Tuple[Any, ...]:
        s = self.section(section)
        j = s.columns.index(column)
        return tuple(row[j] for row in s.rows)
