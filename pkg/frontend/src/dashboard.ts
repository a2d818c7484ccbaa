// Topic dashboard: class-colored activity chart plus KDE curve with a
// metric/log toggle. All chart data comes from the API; toggling a control
// triggers exactly one refetch of the affected chart.

import { getActivity, getKde } from "./api";
import { renderActivityChart, renderKdeChart } from "./charts";

export interface DashboardState {
  topic: string;
  from: string;
  to: string;
  metric: "reactions" | "sci_ref_ratio";
  log: boolean;
}

export function renderDashboard(
  container: HTMLElement,
  initial: DashboardState,
): { refresh: () => Promise<void>; state: DashboardState } {
  const state = { ...initial };
  container.textContent = "";

  const controls = document.createElement("div");
  controls.className = "dashboard-controls";
  controls.innerHTML = `
    <label>Topic <input name="topic" value="${state.topic}"></label>
    <label>From <input name="from" type="date" value="${state.from}"></label>
    <label>To <input name="to" type="date" value="${state.to}"></label>
    <label>Metric
      <select name="metric">
        <option value="reactions">reactions</option>
        <option value="sci_ref_ratio">scientific-reference ratio</option>
      </select>
    </label>
    <label><input name="log" type="checkbox"> log scale</label>
  `;
  container.appendChild(controls);

  const activityBox = document.createElement("div");
  activityBox.className = "activity-box";
  container.appendChild(activityBox);

  const kdeBox = document.createElement("div");
  kdeBox.className = "kde-box";
  container.appendChild(kdeBox);

  const errorBox = document.createElement("p");
  errorBox.className = "dashboard-error";
  container.appendChild(errorBox);

  const metricSelect = controls.querySelector<HTMLSelectElement>('select[name="metric"]')!;
  metricSelect.value = state.metric;
  const logToggle = controls.querySelector<HTMLInputElement>('input[name="log"]')!;
  logToggle.checked = state.log;

  async function refreshActivity(): Promise<void> {
    const response = await getActivity(state.topic, state.from, state.to);
    renderActivityChart(activityBox, response.series);
  }

  async function refreshKde(): Promise<void> {
    try {
      const response = await getKde(state.topic, state.metric, state.log);
      renderKdeChart(kdeBox, response.curve);
      errorBox.textContent = "";
    } catch {
      kdeBox.textContent = "";
      errorBox.textContent = `no density data for topic "${state.topic}"`;
    }
  }

  async function refresh(): Promise<void> {
    await Promise.all([refreshActivity(), refreshKde()]);
  }

  metricSelect.addEventListener("change", () => {
    state.metric = metricSelect.value as DashboardState["metric"];
    void refreshKde();
  });
  logToggle.addEventListener("change", () => {
    state.log = logToggle.checked;
    void refreshKde();
  });
  for (const name of ["topic", "from", "to"] as const) {
    const input = controls.querySelector<HTMLInputElement>(`input[name="${name}"]`)!;
    input.addEventListener("change", () => {
      state[name] = input.value;
      void refresh();
    });
  }

  return { refresh, state };
}
