from .main import app

app(prog_name="symplectic-realization")
