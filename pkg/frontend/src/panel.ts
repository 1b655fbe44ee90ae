import { fmt } from "./format.js";
import type { Report } from "./types.js";

// Verdict panel: one card per evaluated use case, one row per check. Every
// displayed figure is the verbatim response value; the limiting constraint
// row is highlighted.

export function renderPanel(container: HTMLElement, reports: Report[]): void {
  container.textContent = "";
  for (const report of reports) {
    const card = document.createElement("section");
    card.className = `report report-${report.overall}`;
    card.dataset.useCase = report.use_case;
    card.dataset.overall = report.overall;

    const heading = document.createElement("h3");
    heading.textContent = `${report.use_case}: ${report.overall.toUpperCase()}`;
    card.appendChild(heading);

    if (report.limiting_constraint) {
      const limiting = document.createElement("p");
      limiting.className = "limiting";
      limiting.textContent = `limiting: ${report.limiting_constraint}`;
      card.appendChild(limiting);
    }

    const table = document.createElement("table");
    const head = document.createElement("tr");
    for (const label of ["check", "required", "achieved", "margin", "verdict"]) {
      const th = document.createElement("th");
      th.textContent = label;
      head.appendChild(th);
    }
    table.appendChild(head);

    for (const check of report.checks) {
      const row = document.createElement("tr");
      row.dataset.check = check.name;
      row.dataset.verdict = check.verdict;
      row.className = `verdict-${check.verdict}`;
      if (check.name === report.limiting_constraint) row.classList.add("limiting-row");
      row.title = `${check.paper_row}${check.note ? " - " + check.note : ""}`;
      for (const cell of [check.name, fmt(check.required), fmt(check.achieved), fmt(check.margin), check.verdict]) {
        const td = document.createElement("td");
        td.textContent = cell;
        row.appendChild(td);
      }
      table.appendChild(row);
    }
    card.appendChild(table);
    container.appendChild(card);
  }
}
