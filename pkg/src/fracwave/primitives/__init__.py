from .event_listeners import DebugEventListener, register_debug_listener
