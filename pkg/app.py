import streamlit as st

from src.database.db_manager import ReportStore

# Título de la aplicación
st.title("Revisión de Verificaciones de Spreads Simplécticos")

store = ReportStore()
runs = store.list_runs()

st.header("Ejecuciones registradas")
if not runs:
    st.write("No hay ejecuciones registradas. Use `python -m src.interface.cli verify --all --store`.")

for run in runs:
    summary = run["summary"]
    st.subheader(f"Ejecución {run['run_id']} - {run['created']}")
    st.write(f"**Parámetros:** {', '.join(f'({p},{a},{m})' for p, a, m in run['params'])}")
    st.write(f"**Resultado:** {summary['pass']} pass, {summary['fail']} fail, {summary['skipped']} skipped")
    details = store.get_run(run["run_id"])
    with st.expander("Comprobaciones"):
        for check in details["checks"]:
            st.write(f"**{check['id']}** (p={check['p']}, a={check['a']}, m={check['m']}): {check['status']}")
            if check["reason"]:
                st.write(f"Motivo: {check['reason']}")
            for witness in check["witnesses"]:
                st.write(f"- {witness}")
            st.write("---")
