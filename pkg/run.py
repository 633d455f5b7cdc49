"""
Inflex - Polinomios de inflexión de pencils superelípticos
Ejecutar con: python run.py
Luego abrir: http://127.0.0.1:8000/docs

Línea de comandos: python -m inflex --help
"""
import uvicorn

if __name__ == "__main__":
    uvicorn.run(
        "inflex.main:app",
        host="127.0.0.1",
        port=8000,
        reload=True,
        log_level="info"
    )
